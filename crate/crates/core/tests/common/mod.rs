#![allow(dead_code)]

use qflow_core::linalg::{Field, Matrix, Subspace};
use qflow_core::preradical::{PreradicalExpr, SubspaceSpec};
use qflow_core::quiver::{Path, Quiver, DEFAULT_PATH_CAP};
use qflow_core::sample::{connected_dag, random_commutative_fill, random_dims, single_source_sink_dag};
use qflow_core::simplicial::SimplicialComplex;
use qflow_core::Representation;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn gf(p: u64) -> Field {
    Field::new(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Single-source single-sink commutative reps over GF(2) and GF(5).
pub fn single_source_corpus(seed: u64, count: usize) -> Vec<Representation> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let f = gf(if i % 2 == 0 { 2 } else { 5 });
            let n = rng.gen_range(3..=6);
            let q = single_source_sink_dag(&mut rng, n, 0.5, 0.15);
            let dims = random_dims(&mut rng, n, 1, 4);
            random_commutative_fill(&mut rng, f, q, dims).unwrap()
        })
        .collect()
}

/// Connected commutative reps with at least two sources or two sinks.
pub fn multi_source_corpus(seed: u64, count: usize) -> Vec<Representation> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let f = gf([2, 3, 5][out.len() % 3]);
        let n = rng.gen_range(3..=7);
        let q = connected_dag(&mut rng, n, 0.35, 0.1);
        let (s, t) = q.sources_sinks().unwrap();
        if s.len() < 2 && t.len() < 2 {
            continue;
        }
        let dims = random_dims(&mut rng, n, 1, 3);
        out.push(random_commutative_fill(&mut rng, f, q, dims).unwrap());
    }
    out
}

pub fn random_spec<R: Rng>(rng: &mut R, field: Field, dim: usize) -> SubspaceSpec {
    match rng.gen_range(0..4) {
        0 => SubspaceSpec::Full,
        1 => SubspaceSpec::Zero,
        _ => {
            let k = rng.gen_range(1..=dim.max(1));
            let p = field.characteristic() as i64;
            SubspaceSpec::Rows((0..k).map(|_| (0..dim).map(|_| rng.gen_range(0..p)).collect()).collect())
        }
    }
}

pub fn random_leaf<R: Rng>(rng: &mut R, rep: &Representation, alpha_only: bool) -> PreradicalExpr {
    let v = rng.gen_range(0..rep.quiver().vertex_count());
    let id = rep.quiver().vertex_id(v).to_string();
    let sub = random_spec(rng, rep.field(), rep.dim(v));
    if alpha_only || rng.gen_bool(0.5) {
        PreradicalExpr::alpha(id, sub)
    } else {
        PreradicalExpr::omega(id, sub)
    }
}

/// α/ω leaves combined with meet and join.
pub fn random_expr<R: Rng>(rng: &mut R, rep: &Representation, depth: usize, alpha_only: bool) -> PreradicalExpr {
    if depth == 0 || rng.gen_bool(0.4) {
        return random_leaf(rng, rep, alpha_only);
    }
    let a = random_expr(rng, rep, depth - 1, alpha_only);
    let b = random_expr(rng, rep, depth - 1, alpha_only);
    if rng.gen_bool(0.5) {
        PreradicalExpr::meet(a, b)
    } else {
        PreradicalExpr::join(a, b)
    }
}

/// Pairs of paths with equal endpoints whose composites differ, by full
/// enumeration.
pub fn oracle_commutes(rep: &Representation) -> bool {
    let q = rep.quiver();
    for u in 0..q.vertex_count() {
        for v in 0..q.vertex_count() {
            let paths = q.enumerate_paths(u, v, DEFAULT_PATH_CAP).unwrap();
            let mut composites = paths.iter().map(|p| rep.path_composite(p).unwrap());
            if let Some(first) = composites.next() {
                if composites.any(|c| c != first) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn compose_along(field: Field, start_dim: usize, maps: &[Matrix]) -> Matrix {
    maps.iter().fold(Matrix::identity(field, start_dim), |acc, m| m * &acc)
}

/// Flag complex of a random graph on `n` vertices.
pub fn random_flag_complex<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> (Vec<String>, Vec<Vec<bool>>) {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    (names, adj)
}

/// Cliques of the graph, each as a sorted list of vertex indices.
pub fn cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        for w in last + 1..n {
            if c.iter().all(|&u| adj[u][w]) {
                let mut d = c.clone();
                d.push(w);
                stack.push(d);
            }
        }
        out.push(c);
    }
    out
}

/// Random filtration value for every clique: vertices and edges get random
/// levels, a larger clique enters at the max level of its edges.
pub fn clique_levels<R: Rng>(rng: &mut R, adj: &[Vec<bool>], cl: &[Vec<usize>], levels: usize) -> Vec<usize> {
    let n = adj.len();
    let vl: Vec<usize> = (0..n).map(|_| rng.gen_range(0..levels)).collect();
    let mut el = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let l = rng.gen_range(vl[i].max(vl[j])..levels);
            el[i][j] = l;
            el[j][i] = l;
        }
    }
    cl.iter()
        .map(|c| {
            let mut l = c.iter().map(|&i| vl[i]).max().unwrap();
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    l = l.max(el[c[a]][c[b]]);
                }
            }
            l
        })
        .collect()
}

pub fn complex_from(names: &[String], cl: &[Vec<usize>], keep: impl Fn(usize) -> bool) -> SimplicialComplex {
    SimplicialComplex::from_simplices(
        cl.iter()
            .enumerate()
            .filter(|&(i, _)| keep(i))
            .map(|(_, c)| c.iter().map(|&i| names[i].clone()).collect::<Vec<_>>()),
    )
}

/// Every monotone lattice path between two grid vertices.
pub fn all_paths(q: &Quiver, u: usize, v: usize) -> Vec<Path> {
    q.enumerate_paths(u, v, DEFAULT_PATH_CAP).unwrap()
}

pub fn shuffled<T: Clone, R: Rng>(rng: &mut R, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

/// Every vector of `F_2^n`.
pub fn gf2_vectors(n: usize) -> Vec<Vec<u32>> {
    (0..1u32 << n).map(|m| (0..n).map(|i| m >> i & 1).collect()).collect()
}

/// Every subspace of `F_2^n`, spanned by subsets of at most `n` vectors.
pub fn gf2_subspaces(n: usize) -> Vec<Subspace> {
    let f = gf(2);
    let vs = gf2_vectors(n);
    let mut out: Vec<Subspace> = Vec::new();
    fn rec(f: Field, n: usize, vs: &[Vec<u32>], start: usize, chosen: &mut Vec<Vec<u32>>, out: &mut Vec<Subspace>) {
        let s = Subspace::span(f, n, chosen);
        if !out.contains(&s) {
            out.push(s);
        }
        if chosen.len() == n {
            return;
        }
        for i in start..vs.len() {
            chosen.push(vs[i].clone());
            rec(f, n, vs, i + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(f, n, &vs, 1, &mut Vec::new(), &mut out);
    out
}

/// Every `rows × cols` matrix over GF(2).
pub fn gf2_matrices(rows: usize, cols: usize) -> impl Iterator<Item = Matrix> {
    let f = gf(2);
    let cells = rows * cols;
    (0..1u64 << cells).map(move |m| Matrix::from_fn(f, rows, cols, |r, c| (m >> (r * cols + c) & 1) as u32))
}
