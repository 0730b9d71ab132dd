//! Random DAGs and representations for randomized checks.
//!
//! Commutative fills are built vertex by vertex in topological order. The
//! matrices on the incoming edges of `v` are unknowns subject to the linear
//! conditions `X_i Φ(a, w_i) = X_j Φ(a, w_j)` for every common ancestor `a`
//! of the edge sources `w_i, w_j`; a uniformly random element of that
//! solution space is chosen, so every commutative representation of the
//! given shape can occur.

use rand::Rng;

use crate::error::Result;
use crate::gmodule::Representation;
use crate::linalg::{Field, Matrix, Subspace};
use crate::quiver::Quiver;

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    let p = field.characteristic();
    Matrix::from_fn(field, rows, cols, |_, _| rng.gen_range(0..p))
}

/// Random element of a subspace (uniform coefficients on its basis).
pub fn random_vector_in<R: Rng + ?Sized>(rng: &mut R, s: &Subspace) -> Vec<u32> {
    let f = s.field();
    let coeffs: Vec<u32> = (0..s.dim()).map(|_| rng.gen_range(0..f.characteristic())).collect();
    s.inclusion().apply(&coeffs).expect("coefficient count equals dim")
}

/// Random subspace of `F^n` spanned by up to `max_gens` random vectors.
pub fn random_subspace<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize, max_gens: usize) -> Subspace {
    let k = rng.gen_range(0..=max_gens);
    Subspace::row_span(&random_matrix(rng, field, k, n))
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// DAG on `v0 … v{n-1}` with edges only from lower to higher index, each
/// present with probability `edge_prob`; with `parallel_prob` an edge is
/// doubled.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64, parallel_prob: f64) -> Quiver {
    let names = vertex_names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((i, j));
                if rng.gen_bool(parallel_prob) {
                    edges.push((i, j));
                }
            }
        }
    }
    build(&names, &edges)
}

fn build(names: &[String], edges: &[(usize, usize)]) -> Quiver {
    Quiver::new(
        names.iter().cloned(),
        edges
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| (format!("e{k}"), names[i].clone(), names[j].clone())),
    )
    .expect("generated quiver is well formed")
}

/// Random DAG whose only source is `v0` and only sink is `v{n-1}`.
pub fn single_source_sink_dag<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64, parallel_prob: f64) -> Quiver {
    assert!(n >= 1);
    let names = vertex_names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((i, j));
                if rng.gen_bool(parallel_prob) {
                    edges.push((i, j));
                }
            }
        }
    }
    for v in 1..n {
        if !edges.iter().any(|&(_, j)| j == v) {
            edges.push((0, v));
        }
    }
    for v in 0..n.saturating_sub(1) {
        if !edges.iter().any(|&(i, _)| i == v) {
            edges.push((v, n - 1));
        }
    }
    build(&names, &edges)
}

/// Random weakly connected DAG: components of a random DAG are joined by
/// extra forward edges.
pub fn connected_dag<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64, parallel_prob: f64) -> Quiver {
    let names = vertex_names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((i, j));
                if rng.gen_bool(parallel_prob) {
                    edges.push((i, j));
                }
            }
        }
    }
    // union-find over the undirected edges
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in &edges {
        let (a, b) = (root(&mut parent, i), root(&mut parent, j));
        parent[a] = b;
    }
    for v in 1..n {
        let (a, b) = (root(&mut parent, v - 1), root(&mut parent, v));
        if a != b {
            let u = rng.gen_range(0..v);
            let (lo, hi) = if rng.gen_bool(0.5) { (u, v) } else { (v - 1, v) };
            edges.push((lo, hi));
            let (a, b) = (root(&mut parent, lo), root(&mut parent, hi));
            parent[a] = b;
        }
    }
    build(&names, &edges)
}

/// Random matrices on every edge, with no commutativity imposed.
pub fn random_fill<R: Rng + ?Sized>(rng: &mut R, field: Field, quiver: Quiver, dims: Vec<usize>) -> Result<Representation> {
    let mats = quiver
        .edges()
        .iter()
        .map(|e| random_matrix(rng, field, dims[e.dst], dims[e.src]))
        .collect();
    Representation::new(field, quiver, dims, mats)
}

/// Random commutative representation of `quiver`, already validated.
pub fn random_commutative_fill<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    quiver: Quiver,
    dims: Vec<usize>,
) -> Result<Representation> {
    let n = quiver.vertex_count();
    let order = quiver.topo_order()?;
    let mut mats: Vec<Option<Matrix>> = vec![None; quiver.edge_count()];
    let mut phi: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
    for &v in &order {
        phi[v][v] = Some(Matrix::identity(field, dims[v]));
        let incoming = quiver.in_edges(v);
        let dv = dims[v];
        // unknown X_i occupies columns offset[i] .. offset[i] + dv * d_{w_i}
        let mut offset = Vec::with_capacity(incoming.len());
        let mut unknowns = 0;
        for &e in incoming {
            offset.push(unknowns);
            unknowns += dv * dims[quiver.edge(e).src];
        }
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for i in 0..incoming.len() {
            for j in i + 1..incoming.len() {
                let wi = quiver.edge(incoming[i]).src;
                let wj = quiver.edge(incoming[j]).src;
                for a in 0..n {
                    let (Some(pi), Some(pj)) = (&phi[a][wi], &phi[a][wj]) else {
                        continue;
                    };
                    // (X_i pi - X_j pj)[r][c] = 0
                    for r in 0..dv {
                        for c in 0..dims[a] {
                            let mut row = vec![0; unknowns];
                            for k in 0..dims[wi] {
                                let idx = offset[i] + r * dims[wi] + k;
                                row[idx] = field.add(row[idx], pi.get(k, c));
                            }
                            for k in 0..dims[wj] {
                                let idx = offset[j] + r * dims[wj] + k;
                                row[idx] = field.sub(row[idx], pj.get(k, c));
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let solutions = Matrix::from_field_rows(field, unknowns, &rows).kernel();
        let x = random_vector_in(rng, &solutions);
        for (i, &e) in incoming.iter().enumerate() {
            let w = quiver.edge(e).src;
            let dw = dims[w];
            let m = Matrix::from_fn(field, dv, dw, |r, k| x[offset[i] + r * dw + k]);
            for a in 0..n {
                if let Some(via) = &phi[a][w] {
                    if phi[a][v].is_none() {
                        phi[a][v] = Some(&m * via);
                    }
                }
            }
            mats[e] = Some(m);
        }
    }
    let mats = mats.into_iter().map(|m| m.expect("every edge filled")).collect();
    Representation::new(field, quiver, dims, mats)?.validated()
}

/// Random dims in `lo..=hi` for each vertex.
pub fn random_dims<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: usize, hi: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}
