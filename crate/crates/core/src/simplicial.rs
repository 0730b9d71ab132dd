//! Simplicial homology over GF(p), maps induced by inclusions, and graph
//! filtrations turned into commutative representations.
//!
//! Simplices are sorted tuples of vertex labels; within each dimension
//! they are ordered lexicographically, which fixes the column order of
//! every boundary matrix.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gmodule::Representation;
use crate::linalg::{Field, Matrix, QuotientSpace, Subspace};
use crate::preradical::eval_alpha;
use crate::quiver::{Path, Quiver, DEFAULT_PATH_CAP};

pub type Simplex = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Closure of the given simplices under taking faces. Repeated labels
    /// inside a simplex are merged; empty simplices are ignored.
    pub fn from_simplices<I, S, L>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for s in simplices {
            let labels: BTreeSet<String> = s.into_iter().map(Into::into).collect();
            let labels: Vec<String> = labels.into_iter().collect();
            if labels.is_empty() || all.contains(&labels) {
                continue;
            }
            let k = labels.len();
            assert!(k <= 24, "simplex with {k} vertices is too large to close");
            for mask in 1u32..(1 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| labels[i].clone()).collect();
                all.insert(face);
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        for list in &mut by_dim {
            list.sort();
        }
        let index = by_dim
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { by_dim, index }
    }

    pub fn empty() -> Self {
        Self::from_simplices(Vec::<Vec<String>>::new())
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn vertices(&self) -> Vec<String> {
        self.simplices(0).iter().map(|s| s[0].clone()).collect()
    }

    pub fn index_of(&self, simplex: &[String]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.index.get(k)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[String]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// First simplex of `self` missing from `other`, if any.
    pub fn missing_from(&self, other: &SimplicialComplex) -> Option<Simplex> {
        self.by_dim.iter().flatten().find(|s| !other.contains(s)).cloned()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.missing_from(other).is_none()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Matrix of `∂_k : C_k → C_{k-1}`; the i-th face of a simplex gets the
    /// sign `(-1)^i` reduced mod p. `∂_0` has no rows.
    pub fn boundary_matrix(&self, k: usize, field: Field) -> Matrix {
        let cols = self.count(k);
        if k == 0 {
            return Matrix::zeros(field, 0, cols);
        }
        let mut m = Matrix::zeros(field, self.count(k - 1), cols);
        for (j, s) in self.simplices(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = self.index_of(&face).expect("complex is closed under faces");
                let sign = if i % 2 == 0 { 1 } else { field.neg(1) };
                m.set(row, j, sign);
            }
        }
        m
    }

    /// Chain map `C_k(self) → C_k(larger)` of an inclusion.
    pub fn inclusion_chain_map(&self, larger: &SimplicialComplex, k: usize, field: Field) -> Result<Matrix> {
        if let Some(missing) = self.missing_from(larger) {
            return Err(Error::NotSubcomplex {
                small: "domain".into(),
                large: "codomain".into(),
                missing,
            });
        }
        let mut m = Matrix::zeros(field, larger.count(k), self.count(k));
        for (j, s) in self.simplices(k).iter().enumerate() {
            m.set(larger.index_of(s).expect("checked above"), j, 1);
        }
        Ok(m)
    }
}

/// `H_k = Z_k / B_k` with explicit coordinates.
///
/// The quotient `C_k / B_k` is taken with [`QuotientSpace`]; the image of
/// `Z_k` there (`classes`, in RREF) carries the homology coordinates, and
/// each basis class is lifted to a cycle in `representatives`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasis {
    pub k: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub quotient: QuotientSpace,
    pub classes: Subspace,
    /// One cycle per homology basis class, as rows in `C_k` coordinates.
    pub representatives: Matrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    /// Coordinates of the class of a cycle, `None` if `z` is not a cycle.
    pub fn class_of(&self, z: &[u32]) -> Option<Vec<u32>> {
        if !self.cycles.contains(z) {
            return None;
        }
        let y = self.quotient.project(z).ok()?;
        self.classes.coordinates(&y)
    }
}

pub fn homology(x: &SimplicialComplex, k: usize, field: Field) -> HomologyBasis {
    let ck = x.count(k);
    let cycles = x.boundary_matrix(k, field).kernel();
    let boundaries = x.boundary_matrix(k + 1, field).image();
    debug_assert_eq!(boundaries.ambient_dim(), ck);
    let quotient = QuotientSpace::new(ck, &boundaries).expect("B_k lives in C_k");
    let classes = cycles.image_under(quotient.map()).expect("Z_k lives in C_k");
    let reps: Vec<Vec<u32>> = (0..classes.dim())
        .map(|i| quotient.lift(classes.basis().row(i)).expect("class has quotient coordinates"))
        .collect();
    let representatives = Matrix::from_field_rows(field, ck, &reps);
    HomologyBasis {
        k,
        cycles,
        boundaries,
        quotient,
        classes,
        representatives,
    }
}

fn induced_between(
    x: &SimplicialComplex,
    hx: &HomologyBasis,
    y: &SimplicialComplex,
    hy: &HomologyBasis,
    field: Field,
) -> Result<Matrix> {
    let k = hx.k;
    let chain = x.inclusion_chain_map(y, k, field)?;
    // well defined: boundaries of X stay boundaries in Y
    let pushed = hx.boundaries.image_under(&chain)?;
    assert!(pushed.is_subspace_of(&hy.boundaries), "B_k(X) not inside B_k(Y)");
    let mut m = Matrix::zeros(field, hy.dim(), hx.dim());
    for j in 0..hx.dim() {
        let z = chain.apply(hx.representatives.row(j))?;
        let coords = hy.class_of(&z).expect("image of a cycle is a cycle");
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Matrix of `H_k(X) → H_k(Y)` induced by the inclusion `X ⊆ Y`.
pub fn induced_map(x: &SimplicialComplex, y: &SimplicialComplex, k: usize, field: Field) -> Result<Matrix> {
    let hx = homology(x, k, field);
    let hy = homology(y, k, field);
    induced_between(x, &hx, y, &hy, field)
}

/// A DAG whose vertices carry complexes and whose edges are inclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFiltration {
    field: Field,
    quiver: Quiver,
    complexes: Vec<SimplicialComplex>,
}

impl GraphFiltration {
    pub fn new(field: Field, quiver: Quiver, complexes: Vec<SimplicialComplex>) -> Result<Self> {
        quiver.topo_order()?;
        if complexes.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: quiver.vertex_count(),
                found: complexes.len(),
            });
        }
        for e in quiver.edges() {
            if let Some(missing) = complexes[e.src].missing_from(&complexes[e.dst]) {
                return Err(Error::NotSubcomplex {
                    small: quiver.vertex_id(e.src).to_string(),
                    large: quiver.vertex_id(e.dst).to_string(),
                    missing,
                });
            }
        }
        Ok(GraphFiltration {
            field,
            quiver,
            complexes,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn complexes(&self) -> &[SimplicialComplex] {
        &self.complexes
    }

    pub fn complex(&self, v: usize) -> &SimplicialComplex {
        &self.complexes[v]
    }

    /// Vertices in chain order if the quiver is `X_0 → X_1 → ⋯ → X_n`.
    pub fn chain_order(&self) -> Result<Vec<usize>> {
        let q = &self.quiver;
        let n = q.vertex_count();
        if n == 0 || q.edge_count() != n - 1 {
            return Err(Error::NotAChain);
        }
        let order = q.topo_order()?;
        for w in order.windows(2) {
            if !q.out_edges(w[0]).iter().any(|&e| q.edge(e).dst == w[1]) {
                return Err(Error::NotAChain);
            }
        }
        Ok(order)
    }

    /// Integer coordinates of every vertex if the quiver is a full grid
    /// `{0..m}^d` with unit axis-parallel edges. Ids are comma-separated
    /// coordinates, optionally in parentheses: `1,2` or `(1,2)`.
    pub fn grid_coordinates(&self) -> Result<Vec<Vec<usize>>> {
        let q = &self.quiver;
        let coords: Vec<Vec<usize>> = q
            .vertices()
            .iter()
            .map(|id| parse_grid_id(id).ok_or_else(|| Error::NotAGrid(format!("vertex id `{id}` is not a coordinate tuple"))))
            .collect::<Result<_>>()?;
        let d = coords.first().map_or(0, Vec::len);
        if coords.iter().any(|c| c.len() != d) {
            return Err(Error::NotAGrid("coordinate tuples of different lengths".into()));
        }
        let lookup: HashMap<&[usize], usize> = coords.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        if lookup.len() != coords.len() {
            return Err(Error::NotAGrid("two vertices share coordinates".into()));
        }
        for e in q.edges() {
            let (a, b) = (&coords[e.src], &coords[e.dst]);
            let diffs: Vec<usize> = (0..d).filter(|&i| a[i] != b[i]).collect();
            if diffs.len() != 1 || b[diffs[0]] != a[diffs[0]] + 1 {
                return Err(Error::NotAGrid(format!("edge `{}` is not a unit step", e.id)));
            }
        }
        for (v, c) in coords.iter().enumerate() {
            for i in 0..d {
                let mut next = c.clone();
                next[i] += 1;
                if let Some(&w) = lookup.get(next.as_slice()) {
                    if !q.out_edges(v).iter().any(|&e| q.edge(e).dst == w) {
                        return Err(Error::NotAGrid(format!(
                            "missing edge {} → {}",
                            q.vertex_id(v),
                            q.vertex_id(w)
                        )));
                    }
                }
            }
        }
        Ok(coords)
    }
}

fn parse_grid_id(id: &str) -> Option<Vec<usize>> {
    let s = id.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// `W_v = H_k(X_v)`, `f_e` = map induced by the inclusion. The result is
/// validated; a commutativity failure here would be an implementation bug.
pub fn filtration_to_gmodule(chi: &GraphFiltration, k: usize) -> Result<Representation> {
    let field = chi.field;
    let homs: Vec<HomologyBasis> = chi.complexes.iter().map(|x| homology(x, k, field)).collect();
    let dims = homs.iter().map(HomologyBasis::dim).collect();
    let mats = chi
        .quiver
        .edges()
        .iter()
        .map(|e| induced_between(&chi.complexes[e.src], &homs[e.src], &chi.complexes[e.dst], &homs[e.dst], field))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(field, chi.quiver.clone(), dims, mats)?.validated()
}

/// A filtration together with its degree-`k` persistence module.
#[derive(Debug, Clone)]
pub struct FiltrationModule<'a> {
    pub filtration: &'a GraphFiltration,
    pub k: usize,
    pub rep: Representation,
}

impl<'a> FiltrationModule<'a> {
    pub fn new(filtration: &'a GraphFiltration, k: usize) -> Result<Self> {
        Ok(FiltrationModule {
            filtration,
            k,
            rep: filtration_to_gmodule(filtration, k)?,
        })
    }

    /// `dim α_{H_k(X_u)}(H_k(X_v))` with diagram-restricted hom sets.
    fn alpha_dim(&self, u: usize, v: usize) -> Result<usize> {
        let full = Subspace::full(self.rep.field(), self.rep.dim(u));
        Ok(eval_alpha(&self.rep, u, &full, v, DEFAULT_PATH_CAP)?.dim())
    }

    /// `dim α_{H_k(X_i)}^{H_k(X_i)}(H_k(X_{i+p}))` on a chain filtration;
    /// checked against the rank of the map induced by `X_i ⊆ X_{i+p}`.
    pub fn standard_persistence(&self, i: usize, p: usize) -> Result<usize> {
        let order = self.filtration.chain_order()?;
        let last = order.len() - 1;
        if i + p > last {
            return Err(Error::OutOfRange { index: i + p, max: last });
        }
        let (u, v) = (order[i], order[i + p]);
        let dim = self.alpha_dim(u, v)?;
        let direct = induced_map(self.filtration.complex(u), self.filtration.complex(v), self.k, self.rep.field())?;
        assert_eq!(dim, direct.rank(), "α dimension differs from the induced-map rank");
        Ok(dim)
    }

    /// Dimension of the persistent homology group `H_k^t(X_j)`.
    pub fn persistence_group_dim(&self, j: usize, t: usize) -> Result<usize> {
        self.standard_persistence(j, t)
    }

    /// Rank invariant `ρ(u, v) = dim α_{H_k(X_u)}^{H_k(X_u)}(H_k(X_v))` on a
    /// grid filtration; checked against the composite along one monotone
    /// lattice path.
    pub fn rank_invariant(&self, u: &str, v: &str) -> Result<usize> {
        let coords = self.filtration.grid_coordinates()?;
        let q = self.filtration.quiver();
        let (ui, vi) = (q.vertex(u)?, q.vertex(v)?);
        if coords[ui].iter().zip(&coords[vi]).any(|(a, b)| a > b) {
            return Err(Error::NotComparable {
                u: u.to_string(),
                v: v.to_string(),
            });
        }
        let dim = self.alpha_dim(ui, vi)?;
        let path = monotone_path(q, &coords, ui, vi);
        assert_eq!(dim, self.rep.path_composite(&path)?.rank(), "α dimension differs from path composite rank");
        Ok(dim)
    }
}

/// Lattice path stepping along the lowest axis that still needs to grow.
fn monotone_path(q: &Quiver, coords: &[Vec<usize>], u: usize, v: usize) -> Path {
    let mut path = Path::empty(u);
    while path.dst != v {
        let here = &coords[path.dst];
        let axis = (0..here.len()).find(|&i| here[i] < coords[v][i]).expect("u ≤ v");
        let e = *q
            .out_edges(path.dst)
            .iter()
            .find(|&&e| {
                let w = &coords[q.edge(e).dst];
                w[axis] == here[axis] + 1
            })
            .expect("grid has every unit step below v");
        path = path.extended(q, e);
    }
    path
}

pub fn standard_persistence(chi: &GraphFiltration, i: usize, p: usize, k: usize) -> Result<usize> {
    FiltrationModule::new(chi, k)?.standard_persistence(i, p)
}

pub fn persistence_group_dim(chi: &GraphFiltration, j: usize, t: usize, k: usize) -> Result<usize> {
    FiltrationModule::new(chi, k)?.persistence_group_dim(j, t)
}

pub fn rank_invariant(chi: &GraphFiltration, u: &str, v: &str, k: usize) -> Result<usize> {
    FiltrationModule::new(chi, k)?.rank_invariant(u, v)
}
