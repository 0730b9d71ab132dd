//! Input documents: JSON representation files and line-oriented
//! filtration files.

use std::path::Path;

use qflow_core::linalg::{Field, Matrix};
use qflow_core::quiver::Quiver;
use qflow_core::simplicial::{GraphFiltration, SimplicialComplex};
use qflow_core::Representation;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub field: u64,
    /// Vertex id → dimension, in file order.
    pub vertices: Map<String, Value>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub src: String,
    pub dst: String,
    /// Row-major, `dim(dst)` rows of `dim(src)` entries.
    pub matrix: Vec<Vec<i64>>,
}

/// Which prime to compute over, given the one declared in the file.
pub fn resolve_field(declared: u64, over: Option<u64>, force: bool) -> Result<Field, CliError> {
    match over {
        Some(p) if p != declared && !force => Err(CliError::FieldOverride {
            file: declared,
            requested: p,
        }),
        Some(p) => Ok(Field::new(p)?),
        None => Ok(Field::new(declared)?),
    }
}

impl RepresentationFile {
    pub fn parse(path: &Path, text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Builds the (unvalidated) representation; entries are reduced mod p.
    pub fn build(&self, path: &Path, over: Option<u64>, force: bool) -> Result<Representation, CliError> {
        let field = resolve_field(self.field, over, force)?;
        let mut ids = Vec::with_capacity(self.vertices.len());
        let mut dims = Vec::with_capacity(self.vertices.len());
        for (id, d) in &self.vertices {
            let d = d.as_u64().ok_or_else(|| CliError::Format {
                path: path.to_path_buf(),
                line: 0,
                message: format!("dimension of vertex `{id}` must be a non-negative integer, found {d}"),
            })?;
            ids.push(id.clone());
            dims.push(d as usize);
        }
        let quiver = Quiver::new(ids, self.edges.iter().map(|e| (e.id.clone(), e.src.clone(), e.dst.clone())))?;
        let mut mats = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            let (rows, cols) = (dims[quiver.edge(k).dst], dims[quiver.edge(k).src]);
            if e.matrix.len() != rows {
                let found_cols = e.matrix.first().map_or(cols, Vec::len);
                return Err(qflow_core::Error::Shape {
                    edge: e.id.clone(),
                    expected_rows: rows,
                    expected_cols: cols,
                    found_rows: e.matrix.len(),
                    found_cols,
                }
                .into());
            }
            mats.push(Matrix::from_rows(field, cols, &e.matrix).map_err(|err| match err {
                qflow_core::Error::RaggedRows { found, .. } => qflow_core::Error::Shape {
                    edge: e.id.clone(),
                    expected_rows: rows,
                    expected_cols: cols,
                    found_rows: rows,
                    found_cols: found,
                },
                other => other,
            })?);
        }
        Ok(Representation::new(field, quiver, dims, mats)?)
    }

    pub fn from_representation(rep: &Representation) -> Self {
        let q = rep.quiver();
        let vertices = q
            .vertices()
            .iter()
            .zip(rep.dims())
            .map(|(id, &d)| (id.clone(), Value::from(d)))
            .collect();
        let edges = q
            .edges()
            .iter()
            .zip(rep.matrices())
            .map(|(e, m)| EdgeEntry {
                id: e.id.clone(),
                src: q.vertex_id(e.src).to_string(),
                dst: q.vertex_id(e.dst).to_string(),
                matrix: m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect(),
            })
            .collect();
        RepresentationFile {
            field: u64::from(rep.field().characteristic()),
            vertices,
            edges,
        }
    }
}

/// A parsed filtration document, before inclusions are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationFile {
    pub field: u64,
    pub complexes: Vec<(String, Vec<Vec<String>>)>,
    pub edges: Vec<(String, String)>,
}

impl FiltrationFile {
    /// ```text
    /// field 2
    /// complex X0:
    ///   a b
    ///   c
    /// complex X1:
    ///   a b c
    /// edge X0 X1
    /// ```
    /// `#` starts a comment. Simplex lines belong to the latest `complex`
    /// block; an `edge` line closes it.
    pub fn parse(path: &Path, text: &str) -> Result<Self, CliError> {
        let fail = |line: usize, message: String| CliError::Format {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut field = None;
        let mut complexes: Vec<(String, Vec<Vec<String>>)> = Vec::new();
        let mut edges = Vec::new();
        let mut in_block = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().expect("line is not empty");
            match head {
                "field" => {
                    if field.is_some() {
                        return Err(fail(line_no, "`field` given twice".into()));
                    }
                    let p = words.next().and_then(|w| w.parse().ok());
                    match (p, words.next()) {
                        (Some(p), None) => field = Some(p),
                        _ => return Err(fail(line_no, "expected `field <prime>`".into())),
                    }
                }
                "complex" => {
                    let rest = line["complex".len()..].trim();
                    let Some(id) = rest.strip_suffix(':').map(str::trim).filter(|s| !s.is_empty()) else {
                        return Err(fail(line_no, "expected `complex <vertex-id>:`".into()));
                    };
                    if id.contains(char::is_whitespace) {
                        return Err(fail(line_no, format!("vertex id `{id}` contains whitespace")));
                    }
                    complexes.push((id.to_string(), Vec::new()));
                    in_block = true;
                }
                "edge" => {
                    let ends: Vec<&str> = words.collect();
                    let [src, dst] = ends[..] else {
                        return Err(fail(line_no, "expected `edge <src> <dst>`".into()));
                    };
                    edges.push((src.to_string(), dst.to_string()));
                    in_block = false;
                }
                _ if in_block => {
                    let simplex = line.split_whitespace().map(String::from).collect();
                    complexes.last_mut().expect("inside a block").1.push(simplex);
                }
                other => return Err(fail(line_no, format!("unexpected `{other}` outside a complex block"))),
            }
        }
        let field = field.ok_or_else(|| fail(0, "missing `field <prime>` line".into()))?;
        Ok(FiltrationFile { field, complexes, edges })
    }

    pub fn complex(simplices: &[Vec<String>]) -> SimplicialComplex {
        SimplicialComplex::from_simplices(simplices.iter().cloned())
    }

    /// Edge ids are `<src>-><dst>`.
    pub fn build(&self, over: Option<u64>, force: bool) -> Result<GraphFiltration, CliError> {
        let field = resolve_field(self.field, over, force)?;
        let ids: Vec<String> = self.complexes.iter().map(|(id, _)| id.clone()).collect();
        let quiver = Quiver::new(ids, self.edges.iter().map(|(s, d)| (format!("{s}->{d}"), s.clone(), d.clone())))?;
        let complexes = self.complexes.iter().map(|(_, s)| Self::complex(s)).collect();
        Ok(GraphFiltration::new(field, quiver, complexes)?)
    }
}
