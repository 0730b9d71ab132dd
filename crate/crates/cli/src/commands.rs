use std::path::{Path, PathBuf};

use qflow_core::preradical::{
    check_assignment, extended_alpha_persistence, flow_receive, source_info, source_subset_persistence, Evaluator,
    FlowInput, SubspaceSpec,
};
use qflow_core::simplicial::{homology, FiltrationModule};
use qflow_core::{Error, Representation};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::expr::parse_expr;
use crate::format::{FiltrationFile, RepresentationFile};
use crate::report::{sha256_hex, subspace_json};

#[derive(Debug, Clone, Copy)]
pub struct Globals {
    pub field_override: Option<u64>,
    pub force: bool,
    pub path_cap: usize,
}

/// Result payload plus whether the domain check behind it held.
pub struct Outcome {
    pub payload: Map<String, Value>,
    pub failure: Option<String>,
    /// Raw document to print instead of a report.
    pub document: Option<String>,
}

impl Outcome {
    fn ok(payload: Map<String, Value>) -> Self {
        Outcome {
            payload,
            failure: None,
            document: None,
        }
    }
}

pub struct Input {
    pub path: PathBuf,
    pub text: String,
    pub digest: String,
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let digest = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Format {
        path: path.to_path_buf(),
        line: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    Ok(Input {
        path: path.to_path_buf(),
        text,
        digest,
    })
}

fn load_rep(input: &Input, g: Globals) -> Result<Representation, CliError> {
    RepresentationFile::parse(&input.path, &input.text)?.build(&input.path, g.field_override, g.force)
}

/// Validated copy when commutative, the original otherwise.
fn best_effort_validated(rep: Representation) -> Result<(Representation, bool), CliError> {
    match rep.clone().validated() {
        Ok(v) => Ok((v, true)),
        Err(Error::Commutativity { .. }) => Ok((rep, false)),
        Err(e) => Err(e.into()),
    }
}

fn shape_summary(rep: &Representation, p: &mut Map<String, Value>) {
    p.insert("field".into(), json!(rep.field().characteristic()));
    p.insert("vertices".into(), json!(rep.quiver().vertex_count()));
    p.insert("edges".into(), json!(rep.quiver().edge_count()));
}

pub fn validate(input: &Input, g: Globals) -> Result<Outcome, CliError> {
    let rep = load_rep(input, g)?;
    let mut p = Map::new();
    shape_summary(&rep, &mut p);
    match rep.check_commutativity() {
        Ok(_) => {
            p.insert("commutative".into(), json!(true));
            Ok(Outcome::ok(p))
        }
        Err(Error::Commutativity { from, to, first, second }) => {
            let q = rep.quiver();
            p.insert("commutative".into(), json!(false));
            let mut witness = Map::new();
            witness.insert("from".into(), json!(from));
            witness.insert("to".into(), json!(to));
            for (name, ids) in [("path_a", &first), ("path_b", &second)] {
                let path = qflow_core::Path::from_edge_ids(q, &from, ids)?;
                let steps: Vec<String> = path
                    .edges
                    .iter()
                    .map(|&e| {
                        let edge = q.edge(e);
                        format!("{}: {} -> {}", edge.id, q.vertex_id(edge.src), q.vertex_id(edge.dst))
                    })
                    .collect();
                witness.insert(name.into(), json!(steps));
            }
            p.insert("witness".into(), Value::Object(witness));
            Ok(Outcome {
                payload: p,
                failure: Some(format!("paths from `{from}` to `{to}` have different composites")),
                document: None,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn persistence(input: &Input, g: Globals, extended: bool, sources: Option<&[String]>) -> Result<Outcome, CliError> {
    let rep = load_rep(input, g)?.validated()?;
    let pm = rep.persistence()?;
    let mut p = Map::new();
    shape_summary(&rep, &mut p);
    p.insert("lim_dim".into(), json!(pm.limit.dim()));
    p.insert("colim_dim".into(), json!(pm.colimit.dim()));
    p.insert("persistence_dim".into(), json!(pm.dim()));
    p.insert("persistence_basis".into(), json!(pm.image.basis().to_rows()));
    let mut failure = None;
    if extended {
        let ext = extended_alpha_persistence(&rep)?;
        let equal = ext == pm.image;
        p.insert("extended_alpha".into(), subspace_json(&ext));
        p.insert("extended_alpha_equal".into(), json!(equal));
        if !equal {
            failure = Some("extended-diagram α differs from the persistence".into());
        }
    }
    if let Some(names) = sources {
        let ids = names.iter().map(|s| rep.vertex(s)).collect::<Result<Vec<_>, _>>()?;
        let sub = source_subset_persistence(&rep, &ids)?;
        p.insert("sources".into(), json!(names));
        p.insert("source_subset".into(), subspace_json(&sub));
        p.insert("source_subset_within_persistence".into(), json!(sub.is_subspace_of(&pm.image)));
    }
    Ok(Outcome {
        payload: p,
        failure,
        document: None,
    })
}

pub fn prerad(input: &Input, g: Globals, expr: &str, at: &str) -> Result<Outcome, CliError> {
    let expr = parse_expr(expr)?;
    let (rep, commutative) = best_effort_validated(load_rep(input, g)?)?;
    let target = rep.vertex(at)?;
    let assignment = Evaluator::new(&rep, g.path_cap)?.assignment(&expr)?;
    let violations = check_assignment(&rep, &assignment)?;
    let mut p = Map::new();
    p.insert("expr".into(), json!(expr.to_string()));
    p.insert("at".into(), json!(at));
    p.insert("commutative".into(), json!(commutative));
    p.insert("dim".into(), json!(assignment[target].dim()));
    p.insert("basis".into(), json!(assignment[target].basis().to_rows()));
    p.insert("compatible".into(), json!(violations.is_empty()));
    if !violations.is_empty() {
        let edges: Vec<&str> = violations.iter().map(|v| v.edge.as_str()).collect();
        p.insert("violations".into(), json!(edges));
    }
    let failure = (!violations.is_empty()).then(|| "assignment fails a compatibility square".to_string());
    Ok(Outcome {
        payload: p,
        failure,
        document: None,
    })
}

fn load_filtration(input: &Input) -> Result<FiltrationFile, CliError> {
    FiltrationFile::parse(&input.path, &input.text)
}

pub fn homology_cmd(input: &Input, g: Globals, k: usize) -> Result<Outcome, CliError> {
    let chi = load_filtration(input)?.build(g.field_override, g.force)?;
    let field = chi.field();
    let mut p = Map::new();
    p.insert("field".into(), json!(field.characteristic()));
    p.insert("k".into(), json!(k));
    let mut per = Map::new();
    for (v, x) in chi.complexes().iter().enumerate() {
        let h = homology(x, k, field);
        let simplices: Vec<String> = x.simplices(k).iter().map(|s| s.join(" ")).collect();
        per.insert(
            chi.quiver().vertex_id(v).to_string(),
            json!({
                "dim": h.dim(),
                "euler_characteristic": x.euler_characteristic(),
                "k_simplices": simplices,
                "representatives": h.representatives.to_rows(),
            }),
        );
    }
    if chi.complexes().len() == 1 {
        let only = per.values().next().expect("one complex");
        p.insert("dim".into(), only["dim"].clone());
    }
    p.insert("complexes".into(), Value::Object(per));
    Ok(Outcome::ok(p))
}

pub enum FiltrationQuery<'a> {
    Module { output: Option<&'a Path> },
    Std { i: usize, p: usize },
    Rank { u: &'a str, v: &'a str },
    Group { j: usize, t: usize },
}

pub fn filtration(input: &Input, g: Globals, k: usize, query: FiltrationQuery<'_>) -> Result<Outcome, CliError> {
    let chi = load_filtration(input)?.build(g.field_override, g.force)?;
    let module = FiltrationModule::new(&chi, k)?;
    let mut p = Map::new();
    p.insert("k".into(), json!(k));
    match query {
        FiltrationQuery::Module { output } => {
            let doc = serde_json::to_string_pretty(&RepresentationFile::from_representation(&module.rep))
                .expect("file is serializable")
                + "\n";
            let Some(path) = output else {
                return Ok(Outcome {
                    payload: p,
                    failure: None,
                    document: Some(doc),
                });
            };
            std::fs::write(path, &doc).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            p.insert("output".into(), json!(path.display().to_string()));
            p.insert("dims".into(), json!(module.rep.dims()));
        }
        FiltrationQuery::Std { i, p: len } => {
            p.insert("i".into(), json!(i));
            p.insert("p".into(), json!(len));
            p.insert("standard_persistence".into(), json!(module.standard_persistence(i, len)?));
        }
        FiltrationQuery::Rank { u, v } => {
            p.insert("u".into(), json!(u));
            p.insert("v".into(), json!(v));
            p.insert("rank_invariant".into(), json!(module.rank_invariant(u, v)?));
        }
        FiltrationQuery::Group { j, t } => {
            p.insert("j".into(), json!(j));
            p.insert("t".into(), json!(t));
            p.insert("persistence_group_dim".into(), json!(module.persistence_group_dim(j, t)?));
        }
    }
    Ok(Outcome::ok(p))
}

fn spec_from_json(v: &Value, vertex: &str) -> Result<FlowSpec, CliError> {
    let bad = || CliError::Usage(format!("assignment for `{vertex}` must be \"full\", \"zero\", a row list or {{\"expr\": ...}}"));
    match v {
        Value::String(s) if s == "full" => Ok(FlowSpec::Sub(SubspaceSpec::Full)),
        Value::String(s) if s == "zero" => Ok(FlowSpec::Sub(SubspaceSpec::Zero)),
        Value::Array(rows) => {
            let rows = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(bad)?
                        .iter()
                        .map(|x| x.as_i64().ok_or_else(bad))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FlowSpec::Sub(SubspaceSpec::Rows(rows)))
        }
        Value::Object(m) if m.len() == 1 => match m.get("expr") {
            Some(Value::String(e)) => Ok(FlowSpec::Expr(e.clone())),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

enum FlowSpec {
    Sub(SubspaceSpec),
    Expr(String),
}

pub fn flow(input: &Input, g: Globals, target: &str, assign: Option<&Input>, exprs: &[String]) -> Result<Outcome, CliError> {
    let (rep, commutative) = best_effort_validated(load_rep(input, g)?)?;
    let t = rep.vertex(target)?;
    let mut specs: Vec<(String, FlowSpec)> = Vec::new();
    if let Some(a) = assign {
        let doc: Map<String, Value> = serde_json::from_str(&a.text).map_err(|source| CliError::Json {
            path: a.path.clone(),
            source,
        })?;
        for (u, v) in &doc {
            specs.push((u.clone(), spec_from_json(v, u)?));
        }
    }
    for e in exprs {
        let (u, text) = e
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--expr expects <vertex>=<expression>, got `{e}`")))?;
        specs.push((u.trim().to_string(), FlowSpec::Expr(text.to_string())));
    }
    let mut inputs = Vec::with_capacity(specs.len());
    for (u, spec) in specs {
        let ui = rep.vertex(&u)?;
        let value = match spec {
            FlowSpec::Sub(s) => FlowInput::Subspace(s.resolve(rep.field(), rep.dim(ui), &u)?),
            FlowSpec::Expr(text) => FlowInput::Expr(parse_expr(&text)?),
        };
        inputs.push((ui, value));
    }
    let fr = flow_receive(&rep, t, &inputs, g.path_cap)?;
    let info = source_info(&rep, t, g.path_cap)?;
    let mut p = Map::new();
    p.insert("target".into(), json!(target));
    p.insert("commutative".into(), json!(commutative));
    p.insert("received".into(), subspace_json(&fr.received));
    if let Some(b) = &fr.bound {
        p.insert("join_bound".into(), subspace_json(b));
    }
    if let Some(w) = fr.within_bound {
        p.insert("within_join_bound".into(), json!(w));
    }
    p.insert("source_info".into(), subspace_json(&info));
    if rep.quiver().in_edges(t).is_empty() {
        p.insert("warning".into(), json!(format!("`{target}` has no incoming edges")));
    }
    let failure = (fr.within_bound == Some(false)).then(|| "received information exceeds the join bound".to_string());
    Ok(Outcome {
        payload: p,
        failure,
        document: None,
    })
}
