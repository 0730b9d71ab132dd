//! Commutative representations of a DAG (commutative G-modules): a vector
//! space `F^{d_v}` per vertex and a matrix per edge such that any two
//! directed paths with the same endpoints compose to the same map.
//!
//! Limits and colimits are computed concretely inside the direct sum
//! `F^D`, `D = Σ d_v`, with vertex blocks laid out in topological order.

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, QuotientSpace, Subspace};
use crate::quiver::{Path, Quiver};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    field: Field,
    quiver: Quiver,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
    // composites[u][v] for every reachable pair; present only once validated
    composites: Option<Vec<Vec<Option<Matrix>>>>,
}

/// `lim(M)` as a subspace of `F^D` together with its cone legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitData {
    pub total_dim: usize,
    /// Block offset of each vertex (indexed by vertex) inside `F^D`.
    pub offsets: Vec<usize>,
    pub basis: Subspace,
    /// `η_v : lim(M) → W_v`, in the coordinates of `basis`.
    pub legs: Vec<Matrix>,
}

impl LimitData {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// `colim(M) = F^D / relations` together with its cocone legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitData {
    pub total_dim: usize,
    pub offsets: Vec<usize>,
    pub relations: Subspace,
    pub quotient: QuotientSpace,
    /// `ι_v : W_v → colim(M)`.
    pub legs: Vec<Matrix>,
}

impl ColimitData {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// The persistence `P(M) = im(φ_M)` with the data it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Persistence {
    pub limit: LimitData,
    pub colimit: ColimitData,
    pub phi: Matrix,
    pub image: Subspace,
}

impl Persistence {
    pub fn dim(&self) -> usize {
        self.image.dim()
    }
}

impl Representation {
    /// Structural constructor: one dimension per vertex and one matrix per
    /// edge (indexed like the quiver), shapes `dims[dst] × dims[src]`.
    pub fn new(field: Field, quiver: Quiver, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        quiver.topo_order()?;
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: quiver.vertex_count(),
                found: dims.len(),
            });
        }
        if mats.len() != quiver.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: quiver.edge_count(),
                found: mats.len(),
            });
        }
        for (e, m) in quiver.edges().iter().zip(&mats) {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.characteristic(),
                    right: m.field().characteristic(),
                });
            }
            let expected = (dims[e.dst], dims[e.src]);
            if m.shape() != expected {
                return Err(Error::Shape {
                    edge: e.id.clone(),
                    expected_rows: expected.0,
                    expected_cols: expected.1,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        Ok(Representation {
            field,
            quiver,
            dims,
            mats,
            composites: None,
        })
    }

    /// Convenience constructor from named vertices and `(id, src, dst, matrix)` edges.
    pub fn from_named(
        field: Field,
        vertices: &[(&str, usize)],
        edges: Vec<(&str, &str, &str, Matrix)>,
    ) -> Result<Self> {
        let quiver = Quiver::new(
            vertices.iter().map(|(v, _)| v.to_string()),
            edges.iter().map(|(id, s, t, _)| (id.to_string(), *s, *t)),
        )?;
        let dims = vertices.iter().map(|&(_, d)| d).collect();
        let mats = edges.into_iter().map(|(_, _, _, m)| m).collect();
        Representation::new(field, quiver, dims, mats)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn matrix(&self, e: usize) -> &Matrix {
        &self.mats[e]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.quiver.vertex(id)
    }

    pub fn is_commutative(&self) -> bool {
        self.composites.is_some()
    }

    /// The unique composite `u ⇝ v` of a validated representation, or
    /// `None` when `v` is unreachable (or the representation is unvalidated).
    pub fn composite(&self, u: usize, v: usize) -> Option<&Matrix> {
        self.composites.as_ref()?[u][v].as_ref()
    }

    /// Incremental commutativity check. Vertices are visited in topological
    /// order while a composite `Φ(u, v)` is kept for every reachable pair;
    /// each edge `e = (w, v)` proposes `f_e · Φ(u, w)` for every ancestor `u`
    /// of `w`, and the first disagreement is reported with both paths.
    pub fn check_commutativity(&self) -> Result<Vec<Vec<Option<Matrix>>>> {
        let n = self.quiver.vertex_count();
        let order = self.quiver.topo_order()?;
        let mut table: Vec<Vec<Option<(Matrix, Path)>>> = vec![vec![None; n]; n];
        for &v in &order {
            table[v][v] = Some((Matrix::identity(self.field, self.dims[v]), Path::empty(v)));
            for &e in self.quiver.in_edges(v) {
                let w = self.quiver.edge(e).src;
                for u in 0..n {
                    let Some((via, path)) = &table[u][w] else {
                        continue;
                    };
                    let candidate = &self.mats[e] * via;
                    let candidate_path = path.extended(&self.quiver, e);
                    match &table[u][v] {
                        None => table[u][v] = Some((candidate, candidate_path)),
                        Some((existing, existing_path)) => {
                            if *existing != candidate {
                                return Err(Error::Commutativity {
                                    from: self.quiver.vertex_id(u).to_string(),
                                    to: self.quiver.vertex_id(v).to_string(),
                                    first: existing_path.edge_ids(&self.quiver),
                                    second: candidate_path.edge_ids(&self.quiver),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(table
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.map(|(m, _)| m)).collect())
            .collect())
    }

    /// Runs [`Representation::check_commutativity`] and marks the
    /// representation as commutative on success.
    pub fn validated(mut self) -> Result<Self> {
        self.composites = Some(self.check_commutativity()?);
        Ok(self)
    }

    fn require_validated(&self) -> Result<()> {
        if self.is_commutative() {
            Ok(())
        } else {
            Err(Error::NotValidated)
        }
    }

    /// `f_γ = f_{e_n} ∘ ⋯ ∘ f_{e_1}`; the empty path gives the identity.
    pub fn path_composite(&self, path: &Path) -> Result<Matrix> {
        let mut at = path.src;
        let mut acc = Matrix::identity(self.field, self.dims[at]);
        for &e in &path.edges {
            let edge = self.quiver.edge(e);
            if edge.src != at {
                return Err(Error::BrokenPath(format!(
                    "edge `{}` does not start at `{}`",
                    edge.id,
                    self.quiver.vertex_id(at)
                )));
            }
            acc = self.mats[e].try_mul(&acc)?;
            at = edge.dst;
        }
        if at != path.dst {
            return Err(Error::BrokenPath(format!(
                "path ends at `{}`, not `{}`",
                self.quiver.vertex_id(at),
                self.quiver.vertex_id(path.dst)
            )));
        }
        Ok(acc)
    }

    /// Block offsets inside `F^D`, topological order with id tie-breaks.
    pub fn block_offsets(&self) -> (Vec<usize>, usize) {
        let order = self.quiver.topo_order().expect("representations are acyclic");
        let mut offsets = vec![0; self.dims.len()];
        let mut total = 0;
        for v in order {
            offsets[v] = total;
            total += self.dims[v];
        }
        (offsets, total)
    }

    /// `lim(M) = {x ∈ F^D : f_e x_u = x_v for every edge e = (u, v)}`.
    pub fn limit(&self) -> Result<LimitData> {
        self.require_validated()?;
        let f = self.field;
        let (offsets, total) = self.block_offsets();
        let rows: usize = self.quiver.edges().iter().map(|e| self.dims[e.dst]).sum();
        let mut constraints = Matrix::zeros(f, rows, total);
        let mut r0 = 0;
        for (e, m) in self.quiver.edges().iter().zip(&self.mats) {
            constraints.set_block(r0, offsets[e.src], m);
            let minus_id = Matrix::identity(f, self.dims[e.dst]).neg();
            constraints.set_block(r0, offsets[e.dst], &minus_id);
            r0 += self.dims[e.dst];
        }
        let basis = constraints.kernel();
        let legs = (0..self.dims.len())
            .map(|v| basis.basis().column_block(offsets[v], self.dims[v]).transpose())
            .collect();
        Ok(LimitData {
            total_dim: total,
            offsets,
            basis,
            legs,
        })
    }

    /// `colim(M) = F^D / span{ι̂_v(f_e x) − ι̂_u(x)}`.
    pub fn colimit(&self) -> Result<ColimitData> {
        self.require_validated()?;
        let f = self.field;
        let (offsets, total) = self.block_offsets();
        let mut gens = Vec::new();
        for (e, m) in self.quiver.edges().iter().zip(&self.mats) {
            for i in 0..self.dims[e.src] {
                let mut g = vec![0; total];
                for (r, x) in m.column(i).into_iter().enumerate() {
                    g[offsets[e.dst] + r] = x;
                }
                let at = offsets[e.src] + i;
                g[at] = f.sub(g[at], 1);
                gens.push(g);
            }
        }
        let relations = Subspace::span(f, total, &gens);
        let quotient = QuotientSpace::new(total, &relations)?;
        let legs = (0..self.dims.len())
            .map(|v| quotient.map().column_block(offsets[v], self.dims[v]))
            .collect();
        Ok(ColimitData {
            total_dim: total,
            offsets,
            relations,
            quotient,
            legs,
        })
    }

    /// `φ_M = ι_v · η_v`, checked to be the same for every vertex `v`.
    pub fn induced_phi(&self, limit: &LimitData, colimit: &ColimitData) -> Result<Matrix> {
        self.require_validated()?;
        if !self.quiver.is_weakly_connected() {
            return Err(Error::Disconnected);
        }
        let mut phi = Matrix::zeros(self.field, colimit.dim(), limit.dim());
        for v in 0..self.dims.len() {
            let candidate = &colimit.legs[v] * &limit.legs[v];
            if v == 0 {
                phi = candidate;
            } else {
                assert_eq!(
                    phi, candidate,
                    "ι_v η_v depends on v inside one weak component"
                );
            }
        }
        Ok(phi)
    }

    /// `P(M) = φ_M(lim M)` as a subspace of the colimit coordinates.
    pub fn persistence(&self) -> Result<Persistence> {
        let limit = self.limit()?;
        let colimit = self.colimit()?;
        let phi = self.induced_phi(&limit, &colimit)?;
        let image = phi.image();
        Ok(Persistence {
            limit,
            colimit,
            phi,
            image,
        })
    }
}
