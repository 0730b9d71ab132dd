//! α and ω preradicals, their lattice operations, and information-flow
//! queries, all evaluated against a representation.
//!
//! Hom sets are restricted to the morphisms the diagram itself provides:
//! the composites of directed paths. On a validated commutative
//! representation every hom set has at most one element; otherwise each
//! path contributes its own composite.
//!
//! Expressions are evaluated to a whole [`Assignment`] (one subspace per
//! vertex). Product and coproduct need a relative setting, so evaluation
//! runs inside a subquotient context `lower(v) ⊆ value(v) ⊆ upper(v)`:
//!
//! * α terms are `(f(N) + lower(t)) ∩ upper(t)`, the empty sum is `lower(t)`;
//! * ω terms are `(f⁻¹(N + lower(a)) + lower(s)) ∩ upper(s)`, the empty
//!   intersection is `upper(s)`;
//! * `prod(σ, τ)` evaluates τ, then σ with `upper := τ`, i.e. every
//!   morphism is corestricted to the τ-values;
//! * `coprod(σ, τ)` evaluates σ, then τ with `lower := σ`, i.e. inside the
//!   quotient diagram `W_v / σ(W_v)`, and reports the preimage in `W_v`.
//!
//! At top level `lower = 0` and `upper = W`, where the terms reduce to the
//! plain `f(N)` and `f⁻¹(N)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gmodule::{ColimitData, LimitData, Representation};
use crate::linalg::{Field, Matrix, Subspace};
use crate::quiver::{Quiver, DEFAULT_PATH_CAP};

/// One subspace per vertex, indexed like the quiver's vertices.
pub type Assignment = Vec<Subspace>;

/// A subspace of an anchor vertex, as written in an expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubspaceSpec {
    Full,
    Zero,
    /// Spanning rows (not necessarily independent).
    Rows(Vec<Vec<i64>>),
}

impl SubspaceSpec {
    pub fn resolve(&self, field: Field, dim: usize, vertex: &str) -> Result<Subspace> {
        match self {
            SubspaceSpec::Full => Ok(Subspace::full(field, dim)),
            SubspaceSpec::Zero => Ok(Subspace::zero(field, dim)),
            SubspaceSpec::Rows(rows) => {
                if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
                    return Err(Error::InvalidSubspace {
                        vertex: vertex.to_string(),
                        reason: format!("row of length {} in a space of dimension {dim}", bad.len()),
                    });
                }
                Ok(Subspace::row_span(&Matrix::from_rows(field, dim, rows)?))
            }
        }
    }
}

impl fmt::Display for SubspaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceSpec::Full => f.write_str("full"),
            SubspaceSpec::Zero => f.write_str("zero"),
            SubspaceSpec::Rows(rows) => {
                f.write_str("[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str("[")?;
                    for (j, x) in row.iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{x}")?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PreradicalExpr {
    Alpha { anchor: String, sub: SubspaceSpec },
    Omega { anchor: String, sub: SubspaceSpec },
    Meet(Box<PreradicalExpr>, Box<PreradicalExpr>),
    Join(Box<PreradicalExpr>, Box<PreradicalExpr>),
    Prod(Box<PreradicalExpr>, Box<PreradicalExpr>),
    Coprod(Box<PreradicalExpr>, Box<PreradicalExpr>),
}

impl PreradicalExpr {
    pub fn alpha(anchor: impl Into<String>, sub: SubspaceSpec) -> Self {
        PreradicalExpr::Alpha {
            anchor: anchor.into(),
            sub,
        }
    }

    pub fn omega(anchor: impl Into<String>, sub: SubspaceSpec) -> Self {
        PreradicalExpr::Omega {
            anchor: anchor.into(),
            sub,
        }
    }

    pub fn meet(a: Self, b: Self) -> Self {
        PreradicalExpr::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Self, b: Self) -> Self {
        PreradicalExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Self, b: Self) -> Self {
        PreradicalExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn coprod(a: Self, b: Self) -> Self {
        PreradicalExpr::Coprod(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for PreradicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreradicalExpr::Alpha { anchor, sub } => write!(f, "alpha({anchor},{sub})"),
            PreradicalExpr::Omega { anchor, sub } => write!(f, "omega({anchor},{sub})"),
            PreradicalExpr::Meet(a, b) => write!(f, "meet({a},{b})"),
            PreradicalExpr::Join(a, b) => write!(f, "join({a},{b})"),
            PreradicalExpr::Prod(a, b) => write!(f, "prod({a},{b})"),
            PreradicalExpr::Coprod(a, b) => write!(f, "coprod({a},{b})"),
        }
    }
}

/// All path composites `u ⇝ v`: the single composite of a validated
/// commutative representation, or one matrix per enumerated path
/// otherwise. The identity is included when `u == v`.
pub fn hom_set(rep: &Representation, u: usize, v: usize, cap: usize) -> Result<Vec<Matrix>> {
    if rep.is_commutative() {
        return Ok(rep.composite(u, v).cloned().into_iter().collect());
    }
    rep.quiver()
        .enumerate_paths(u, v, cap)?
        .iter()
        .map(|p| rep.path_composite(p))
        .collect()
}

/// Hom sets for every ordered pair of vertices, computed once.
#[derive(Debug, Clone)]
pub struct HomSets {
    sets: Vec<Vec<Vec<Matrix>>>,
}

impl HomSets {
    pub fn new(rep: &Representation, cap: usize) -> Result<Self> {
        let n = rep.quiver().vertex_count();
        let mut sets = Vec::with_capacity(n);
        for u in 0..n {
            let mut row = Vec::with_capacity(n);
            for v in 0..n {
                row.push(hom_set(rep, u, v, cap)?);
            }
            sets.push(row);
        }
        Ok(HomSets { sets })
    }

    pub fn get(&self, u: usize, v: usize) -> &[Matrix] {
        &self.sets[u][v]
    }
}

#[derive(Debug, Clone)]
struct Context {
    upper: Assignment,
    lower: Assignment,
}

/// Evaluates preradical expressions against one representation.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    rep: &'a Representation,
    homs: HomSets,
}

impl<'a> Evaluator<'a> {
    pub fn new(rep: &'a Representation, cap: usize) -> Result<Self> {
        Ok(Evaluator {
            rep,
            homs: HomSets::new(rep, cap)?,
        })
    }

    pub fn representation(&self) -> &Representation {
        self.rep
    }

    pub fn homs(&self) -> &HomSets {
        &self.homs
    }

    fn top_context(&self) -> Context {
        let f = self.rep.field();
        Context {
            upper: self.rep.dims().iter().map(|&d| Subspace::full(f, d)).collect(),
            lower: self.rep.dims().iter().map(|&d| Subspace::zero(f, d)).collect(),
        }
    }

    fn check_anchor_subspace(&self, anchor: usize, n: &Subspace) -> Result<()> {
        if n.ambient_dim() != self.rep.dim(anchor) || n.field() != self.rep.field() {
            return Err(Error::InvalidSubspace {
                vertex: self.rep.quiver().vertex_id(anchor).to_string(),
                reason: format!(
                    "subspace of F^{} given for a space of dimension {}",
                    n.ambient_dim(),
                    self.rep.dim(anchor)
                ),
            });
        }
        Ok(())
    }

    /// `α_N(W_target) = Σ { f(N) | f ∈ Hom(anchor, target) }`.
    pub fn alpha(&self, anchor: usize, n: &Subspace, target: usize) -> Result<Subspace> {
        self.check_anchor_subspace(anchor, n)?;
        let mut acc = Subspace::zero(self.rep.field(), self.rep.dim(target));
        for f in self.homs.get(anchor, target) {
            acc = acc.sum(&n.image_under(f)?)?;
        }
        Ok(acc)
    }

    /// `ω_N(W_source) = ∩ { f⁻¹(N) | f ∈ Hom(source, anchor) }`.
    pub fn omega(&self, anchor: usize, n: &Subspace, source: usize) -> Result<Subspace> {
        self.check_anchor_subspace(anchor, n)?;
        let mut acc = Subspace::full(self.rep.field(), self.rep.dim(source));
        for f in self.homs.get(source, anchor) {
            acc = acc.intersect(&n.preimage_under(f)?)?;
        }
        Ok(acc)
    }

    /// Value of `expr` at every vertex.
    pub fn assignment(&self, expr: &PreradicalExpr) -> Result<Assignment> {
        self.eval_in(expr, &self.top_context())
    }

    pub fn eval(&self, expr: &PreradicalExpr, target: usize) -> Result<Subspace> {
        Ok(self.assignment(expr)?.swap_remove(target))
    }

    fn leaf(&self, anchor: &str, sub: &SubspaceSpec) -> Result<(usize, Subspace)> {
        let a = self.rep.vertex(anchor)?;
        let n = sub.resolve(self.rep.field(), self.rep.dim(a), anchor)?;
        Ok((a, n))
    }

    fn eval_in(&self, expr: &PreradicalExpr, ctx: &Context) -> Result<Assignment> {
        let nv = self.rep.quiver().vertex_count();
        match expr {
            PreradicalExpr::Alpha { anchor, sub } => {
                let (a, n) = self.leaf(anchor, sub)?;
                (0..nv)
                    .map(|t| {
                        let mut acc = ctx.lower[t].clone();
                        for f in self.homs.get(a, t) {
                            let term = n.image_under(f)?.sum(&ctx.lower[t])?.intersect(&ctx.upper[t])?;
                            acc = acc.sum(&term)?;
                        }
                        Ok(acc)
                    })
                    .collect()
            }
            PreradicalExpr::Omega { anchor, sub } => {
                let (a, n) = self.leaf(anchor, sub)?;
                let target = n.sum(&ctx.lower[a])?;
                (0..nv)
                    .map(|s| {
                        let mut acc = ctx.upper[s].clone();
                        for f in self.homs.get(s, a) {
                            let term = target.preimage_under(f)?.sum(&ctx.lower[s])?.intersect(&ctx.upper[s])?;
                            acc = acc.intersect(&term)?;
                        }
                        Ok(acc)
                    })
                    .collect()
            }
            PreradicalExpr::Meet(x, y) => {
                let (x, y) = (self.eval_in(x, ctx)?, self.eval_in(y, ctx)?);
                x.iter().zip(&y).map(|(a, b)| a.intersect(b)).collect()
            }
            PreradicalExpr::Join(x, y) => {
                let (x, y) = (self.eval_in(x, ctx)?, self.eval_in(y, ctx)?);
                x.iter().zip(&y).map(|(a, b)| a.sum(b)).collect()
            }
            PreradicalExpr::Prod(sigma, tau) => {
                let inner = self.eval_in(tau, ctx)?;
                let sub = Context {
                    upper: inner,
                    lower: ctx.lower.clone(),
                };
                self.eval_in(sigma, &sub)
            }
            PreradicalExpr::Coprod(sigma, tau) => {
                let killed = self.eval_in(sigma, ctx)?;
                let quotient = Context {
                    upper: ctx.upper.clone(),
                    lower: killed,
                };
                self.eval_in(tau, &quotient)
            }
        }
    }
}

pub fn eval_alpha(rep: &Representation, anchor: usize, n: &Subspace, target: usize, cap: usize) -> Result<Subspace> {
    if rep.is_commutative() {
        // avoid building every hom set for a single query
        return match rep.composite(anchor, target) {
            Some(f) if n.ambient_dim() == rep.dim(anchor) => n.image_under(f),
            Some(_) => Evaluator::new(rep, cap)?.alpha(anchor, n, target),
            None => Ok(Subspace::zero(rep.field(), rep.dim(target))),
        };
    }
    Evaluator::new(rep, cap)?.alpha(anchor, n, target)
}

pub fn eval_omega(rep: &Representation, anchor: usize, n: &Subspace, source: usize, cap: usize) -> Result<Subspace> {
    Evaluator::new(rep, cap)?.omega(anchor, n, source)
}

pub fn eval_expr(rep: &Representation, expr: &PreradicalExpr, target: usize, cap: usize) -> Result<Subspace> {
    Evaluator::new(rep, cap)?.eval(expr, target)
}

/// An edge on which `f_e(a[u]) ⊄ a[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub edge: String,
    pub src: String,
    pub dst: String,
}

/// Lists every edge whose matrix does not map `a[src]` into `a[dst]`.
pub fn check_assignment(rep: &Representation, a: &[Subspace]) -> Result<Vec<Violation>> {
    let q = rep.quiver();
    if a.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            found: a.len(),
        });
    }
    for (v, s) in a.iter().enumerate() {
        if s.ambient_dim() != rep.dim(v) {
            return Err(Error::InvalidSubspace {
                vertex: q.vertex_id(v).to_string(),
                reason: format!("lives in F^{}, vertex has dimension {}", s.ambient_dim(), rep.dim(v)),
            });
        }
    }
    let mut out = Vec::new();
    for (e, f) in q.edges().iter().zip(rep.matrices()) {
        if !a[e.src].image_under(f)?.is_subspace_of(&a[e.dst]) {
            out.push(Violation {
                edge: e.id.clone(),
                src: q.vertex_id(e.src).to_string(),
                dst: q.vertex_id(e.dst).to_string(),
            });
        }
    }
    Ok(out)
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|c| !taken(c))
        .expect("unbounded search")
}

/// A commutative representation extended by `lim(M)` before its sources
/// and `colim(M)` after its sinks, with the cone legs `η_s` and cocone legs
/// `ι_t` as new edges.
#[derive(Debug, Clone)]
pub struct ExtendedDiagram {
    pub rep: Representation,
    pub lim: usize,
    pub colim: usize,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub limit: LimitData,
    pub colimit: ColimitData,
}

impl ExtendedDiagram {
    /// Requires a validated, weakly connected representation. The result is
    /// validated again, which checks every cone and cocone equation.
    pub fn new(base: &Representation) -> Result<Self> {
        let limit = base.limit()?;
        let colimit = base.colimit()?;
        if !base.quiver().is_weakly_connected() {
            return Err(Error::Disconnected);
        }
        let q = base.quiver();
        let (sources, sinks) = q.sources_sinks()?;
        let has_vertex = |s: &str| q.vertex(s).is_ok();
        let lim_name = fresh_name("LIM", has_vertex);
        let colim_name = fresh_name("COLIM", |s| has_vertex(s) || s == lim_name);

        let mut vertices: Vec<String> = q.vertices().to_vec();
        vertices.push(lim_name.clone());
        vertices.push(colim_name.clone());
        let mut dims = base.dims().to_vec();
        dims.push(limit.dim());
        dims.push(colimit.dim());

        let mut edge_ids: Vec<String> = q.edges().iter().map(|e| e.id.clone()).collect();
        let mut edges: Vec<(String, String, String)> = q
            .edges()
            .iter()
            .map(|e| (e.id.clone(), q.vertex_id(e.src).to_string(), q.vertex_id(e.dst).to_string()))
            .collect();
        let mut mats = base.matrices().to_vec();
        for &s in &sources {
            let id = fresh_name(&format!("eta:{}", q.vertex_id(s)), |c| edge_ids.iter().any(|e| e == c));
            edge_ids.push(id.clone());
            edges.push((id, lim_name.clone(), q.vertex_id(s).to_string()));
            mats.push(limit.legs[s].clone());
        }
        for &t in &sinks {
            let id = fresh_name(&format!("iota:{}", q.vertex_id(t)), |c| edge_ids.iter().any(|e| e == c));
            edge_ids.push(id.clone());
            edges.push((id, q.vertex_id(t).to_string(), colim_name.clone()));
            mats.push(colimit.legs[t].clone());
        }
        let quiver = Quiver::new(vertices, edges)?;
        let lim = quiver.vertex(&lim_name)?;
        let colim = quiver.vertex(&colim_name)?;
        let rep = Representation::new(base.field(), quiver, dims, mats)?.validated()?;
        Ok(ExtendedDiagram {
            rep,
            lim,
            colim,
            sources,
            sinks,
            limit,
            colimit,
        })
    }

    /// `δ : lim(M) → Π W_s`, the legs at the sources stacked in source order.
    pub fn delta(&self) -> Matrix {
        let f = self.rep.field();
        let legs: Vec<&Matrix> = self.sources.iter().map(|&s| &self.limit.legs[s]).collect();
        Matrix::vstack(f, self.limit.dim(), &legs).expect("legs share the limit dimension")
    }

    /// `M̲ = δ⁻¹(Π W_s)`. As a preimage of the whole product this is all of
    /// `lim(M)`; it is computed literally so a finer submodule can be swapped
    /// in through [`extended_alpha_persistence_with`].
    pub fn underline_m(&self) -> Subspace {
        let delta = self.delta();
        Subspace::full(self.rep.field(), delta.rows())
            .preimage_under(&delta)
            .expect("δ has the product as codomain")
    }
}

/// `α_{M̲}^{lim M}(colim M)`: the images of `M̲` under every `lim → colim`
/// composite of the extended diagram.
pub fn extended_alpha_persistence(rep: &Representation) -> Result<Subspace> {
    let ext = ExtendedDiagram::new(rep)?;
    let m = ext.underline_m();
    alpha_on_extended(&ext, &m)
}

/// Like [`extended_alpha_persistence`], with a caller-chosen submodule of
/// `lim(M)` in place of `M̲`.
pub fn extended_alpha_persistence_with(rep: &Representation, sub: &Subspace) -> Result<Subspace> {
    let ext = ExtendedDiagram::new(rep)?;
    alpha_on_extended(&ext, sub)
}

fn alpha_on_extended(ext: &ExtendedDiagram, sub: &Subspace) -> Result<Subspace> {
    Evaluator::new(&ext.rep, DEFAULT_PATH_CAP)?.alpha(ext.lim, sub, ext.colim)
}

/// Sum of `f(M̲)` over `lim → colim` composites whose first step is the
/// leg `η_s` of a source `s` in `subset`.
pub fn source_subset_persistence(rep: &Representation, subset: &[usize]) -> Result<Subspace> {
    let ext = ExtendedDiagram::new(rep)?;
    for &s in subset {
        if !ext.sources.contains(&s) {
            return Err(Error::InvalidSubset(rep.quiver().vertex_id(s).to_string()));
        }
    }
    let m = ext.underline_m();
    let mut acc = Subspace::zero(rep.field(), ext.colimit.dim());
    for &s in subset {
        let Some(rest) = ext.rep.composite(s, ext.colim) else {
            continue;
        };
        let f = rest * &ext.limit.legs[s];
        acc = acc.sum(&m.image_under(&f)?)?;
    }
    Ok(acc)
}

/// Input offered by one upstream vertex to [`flow_receive`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowInput {
    Subspace(Subspace),
    Expr(PreradicalExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowReport {
    /// `Σ f_e(value(u))` over edges `e = (u, target)` with `u` listed.
    pub received: Subspace,
    /// `(σ_1 ∨ ⋯ ∨ σ_n)(target)` over the expression-valued inputs.
    pub bound: Option<Subspace>,
    /// Whether the expression-valued part of `received` lies in `bound`.
    pub within_bound: Option<bool>,
}

pub fn flow_receive(
    rep: &Representation,
    target: usize,
    per_source: &[(usize, FlowInput)],
    cap: usize,
) -> Result<FlowReport> {
    let q = rep.quiver();
    let field = rep.field();
    let evaluator = Evaluator::new(rep, cap)?;
    let zero = Subspace::zero(field, rep.dim(target));
    let mut received = zero.clone();
    let mut from_exprs = zero.clone();
    let mut bound: Option<Subspace> = None;
    for (u, input) in per_source {
        let edges: Vec<usize> = q.in_edges(target).iter().copied().filter(|&e| q.edge(e).src == *u).collect();
        if edges.is_empty() {
            return Err(Error::MissingEdge {
                from: q.vertex_id(*u).to_string(),
                to: q.vertex_id(target).to_string(),
            });
        }
        let value = match input {
            FlowInput::Subspace(s) => {
                if s.ambient_dim() != rep.dim(*u) {
                    return Err(Error::InvalidSubspace {
                        vertex: q.vertex_id(*u).to_string(),
                        reason: format!("lives in F^{}, vertex has dimension {}", s.ambient_dim(), rep.dim(*u)),
                    });
                }
                s.clone()
            }
            FlowInput::Expr(expr) => {
                let at_target = evaluator.eval(expr, target)?;
                bound = Some(match bound {
                    Some(b) => b.sum(&at_target)?,
                    None => at_target,
                });
                evaluator.eval(expr, *u)?
            }
        };
        for e in edges {
            let image = value.image_under(rep.matrix(e))?;
            if matches!(input, FlowInput::Expr(_)) {
                from_exprs = from_exprs.sum(&image)?;
            }
            received = received.sum(&image)?;
        }
    }
    let within_bound = bound.as_ref().map(|b| from_exprs.is_subspace_of(b));
    Ok(FlowReport {
        received,
        bound,
        within_bound,
    })
}

/// Everything the sources can deliver to `target`: with `lim(A) = Π W_s`
/// and its projections surjective, this is `Σ_s Σ_{γ: s ⇝ target} im f_γ`.
pub fn source_info(rep: &Representation, target: usize, cap: usize) -> Result<Subspace> {
    let (sources, _) = rep.quiver().sources_sinks()?;
    let mut acc = Subspace::zero(rep.field(), rep.dim(target));
    for s in sources {
        for f in hom_set(rep, s, target, cap)? {
            acc = acc.sum(&f.image())?;
        }
    }
    Ok(acc)
}
