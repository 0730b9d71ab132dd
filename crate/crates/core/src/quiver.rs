//! Finite quivers: vertices and edges with string ids, parallel edges
//! allowed. Acyclicity is a checked property rather than a construction
//! invariant. All orderings break ties by id so results are reproducible.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};

/// Path enumeration cap used when callers do not pick one.
pub const DEFAULT_PATH_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    // adjacency lists sorted by edge id
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Quiver {}

/// A directed path, as edge indices in traversal order. The empty path at
/// `v` is the identity morphism of the path category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub src: usize,
    pub dst: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn empty(v: usize) -> Self {
        Path {
            src: v,
            dst: v,
            edges: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Appends an edge; the caller guarantees it starts at `self.dst`.
    pub fn extended(&self, q: &Quiver, edge: usize) -> Path {
        let e = q.edge(edge);
        debug_assert_eq!(e.src, self.dst);
        let mut edges = self.edges.clone();
        edges.push(edge);
        Path {
            src: self.src,
            dst: e.dst,
            edges,
        }
    }

    pub fn edge_ids(&self, q: &Quiver) -> Vec<String> {
        self.edges.iter().map(|&e| q.edge(e).id.clone()).collect()
    }

    /// Vertex ids visited, starting with the source.
    pub fn vertex_trail(&self, q: &Quiver) -> Vec<String> {
        std::iter::once(self.src)
            .chain(self.edges.iter().map(|&e| q.edge(e).dst))
            .map(|v| q.vertex_id(v).to_string())
            .collect()
    }

    /// Builds a path from edge ids, checking that consecutive edges compose.
    pub fn from_edge_ids<S: AsRef<str>>(q: &Quiver, src: &str, ids: &[S]) -> Result<Path> {
        let mut path = Path::empty(q.vertex(src)?);
        for id in ids {
            let e = q.edge_by_id(id.as_ref())?;
            if q.edge(e).src != path.dst {
                return Err(Error::BrokenPath(format!(
                    "edge `{}` does not start at `{}`",
                    id.as_ref(),
                    q.vertex_id(path.dst)
                )));
            }
            path = path.extended(q, e);
        }
        Ok(path)
    }
}

impl Quiver {
    pub fn new<V, I, S1, S2, S3>(vertices: V, edges: I) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        I: IntoIterator<Item = (S1, S2, S3)>,
        S1: Into<String>,
        S2: AsRef<str>,
        S3: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut out = Quiver {
            out_edges: vec![Vec::new(); vertices.len()],
            in_edges: vec![Vec::new(); vertices.len()],
            vertices,
            edges: Vec::new(),
            vertex_index,
            edge_index: HashMap::new(),
        };
        for (id, src, dst) in edges {
            let id = id.into();
            let src = out.vertex(src.as_ref())?;
            let dst = out.vertex(dst.as_ref())?;
            let idx = out.edges.len();
            if out.edge_index.insert(id.clone(), idx).is_some() {
                return Err(Error::DuplicateEdge(id));
            }
            out.edges.push(Edge { id, src, dst });
            out.out_edges[src].push(idx);
            out.in_edges[dst].push(idx);
        }
        let edges = &out.edges;
        for list in out.out_edges.iter_mut().chain(out.in_edges.iter_mut()) {
            list.sort_by(|&a, &b| edges[a].id.cmp(&edges[b].id));
        }
        Ok(out)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Outgoing edge indices of `v`, in id order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Incoming edge indices of `v`, in id order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn is_dag(&self) -> bool {
        self.topo_order().is_ok()
    }

    /// Kahn's algorithm, always emitting the smallest available id next.
    pub fn topo_order(&self) -> Result<Vec<usize>> {
        let mut indeg: Vec<usize> = self.in_edges.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<(&str, usize)>> = indeg
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(v, _)| Reverse((self.vertices[v].as_str(), v)))
            .collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(Reverse((_, v))) = ready.pop() {
            order.push(v);
            for &e in &self.out_edges[v] {
                let w = self.edges[e].dst;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(Reverse((self.vertices[w].as_str(), w)));
                }
            }
        }
        if order.len() == self.vertices.len() {
            Ok(order)
        } else {
            Err(Error::Cycle)
        }
    }

    /// Sources (in-degree 0) and sinks (out-degree 0), each sorted by id.
    pub fn sources_sinks(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        self.topo_order()?;
        let mut sources: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.in_edges[v].is_empty())
            .collect();
        let mut sinks: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.out_edges[v].is_empty())
            .collect();
        sources.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        sinks.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        Ok((sources, sinks))
    }

    /// Vertices reachable from `u` by a directed path (including `u`).
    pub fn reachable_from(&self, u: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &e in &self.out_edges[x] {
                let y = self.edges[e].dst;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Vertices from which `v` is reachable (including `v`).
    pub fn reaching(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(x) = stack.pop() {
            for &e in &self.in_edges[x] {
                let y = self.edges[e].src;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// All directed paths `u ⇝ v` in lexicographic order of edge ids.
    /// Fails with [`Error::PathExplosion`] as soon as more than `cap` paths
    /// exist.
    pub fn enumerate_paths(&self, u: usize, v: usize, cap: usize) -> Result<Vec<Path>> {
        self.topo_order()?;
        let useful = self.reaching(v);
        let mut out = Vec::new();
        if !useful[u] {
            return Ok(out);
        }
        let mut stack: Vec<usize> = Vec::new();
        self.walk(u, v, &useful, &mut stack, &mut out, cap, u)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        at: usize,
        target: usize,
        useful: &[bool],
        stack: &mut Vec<usize>,
        out: &mut Vec<Path>,
        cap: usize,
        src: usize,
    ) -> Result<()> {
        if at == target {
            if out.len() == cap {
                return Err(Error::PathExplosion { cap });
            }
            out.push(Path {
                src,
                dst: target,
                edges: stack.clone(),
            });
            // acyclic: no path leaves `target` and returns to it
            return Ok(());
        }
        for &e in &self.out_edges[at] {
            let next = self.edges[e].dst;
            if !useful[next] {
                continue;
            }
            stack.push(e);
            self.walk(next, target, useful, stack, out, cap, src)?;
            stack.pop();
        }
        Ok(())
    }

    /// Number of paths `u ⇝ v` by dynamic programming over the topological
    /// order (saturating).
    pub fn count_paths(&self, u: usize, v: usize) -> Result<u128> {
        let order = self.topo_order()?;
        let mut count = vec![0u128; self.vertex_count()];
        count[u] = 1;
        for &x in &order {
            if count[x] == 0 {
                continue;
            }
            for &e in &self.out_edges[x] {
                let y = self.edges[e].dst;
                count[y] = count[y].saturating_add(count[x]);
            }
        }
        Ok(count[v])
    }

    /// Whether the underlying undirected graph is connected. The empty
    /// quiver counts as connected.
    pub fn is_weakly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut visited = 1;
        while let Some(x) = stack.pop() {
            let nbrs = self.out_edges[x]
                .iter()
                .map(|&e| self.edges[e].dst)
                .chain(self.in_edges[x].iter().map(|&e| self.edges[e].src));
            for y in nbrs {
                if !seen[y] {
                    seen[y] = true;
                    visited += 1;
                    stack.push(y);
                }
            }
        }
        visited == n
    }
}
