//! Generalized Petersen graphs and the small amount of generic graph
//! machinery the rest of the crate needs.
//!
//! Vertices are plain `usize` indices. For `GP(n,k)` the outer vertex `a_i`
//! lives at index `i` and the inner vertex `b_i` at index `n + i`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// The pair `(n, k)` identifying `GP(n,k)`, with `n >= 3` and `1 <= k < n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GpParams {
    n: usize,
    k: usize,
}

impl GpParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams { n, k, reason: "n must be at least 3" });
        }
        if k < 1 {
            return Err(Error::InvalidParams { n, k, reason: "k must be at least 1" });
        }
        if 2 * k >= n {
            return Err(Error::InvalidParams { n, k, reason: "k must satisfy 2k < n" });
        }
        Ok(Self { n, k })
    }

    /// Accepts any `1 <= k < n` with `k != n/2` and maps it onto the
    /// isomorphic representative `GP(n, min(k, n-k))`.
    pub fn normalized(n: usize, k: usize) -> Result<Self> {
        if k >= 1 && k < n && 2 * k > n {
            Self::new(n, n - k)
        } else {
            Self::new(n, k)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    /// Index of `a_i`, with `i` taken modulo `n`.
    pub fn outer(&self, i: usize) -> usize {
        i % self.n
    }

    /// Index of `b_i`, with `i` taken modulo `n`.
    pub fn inner(&self, i: usize) -> usize {
        self.n + i % self.n
    }

    pub fn label(&self, v: usize) -> Result<VertexLabel> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() });
        }
        Ok(if v < self.n { VertexLabel::Outer(v) } else { VertexLabel::Inner(v - self.n) })
    }

    /// Image of `v` under the automorphism `a_i -> a_{i+shift}`, `b_i -> b_{i+shift}`.
    pub fn rotate(&self, v: usize, shift: usize) -> usize {
        let shift = shift % self.n;
        if v < self.n {
            (v + shift) % self.n
        } else {
            self.n + (v - self.n + shift) % self.n
        }
    }

    /// Image of `v` under the automorphism `a_i -> a_{-i}`, `b_i -> b_{-i}`.
    pub fn reflect(&self, v: usize) -> usize {
        if v < self.n {
            (self.n - v) % self.n
        } else {
            self.n + (2 * self.n - v) % self.n
        }
    }
}

impl fmt::Display for GpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GP({},{})", self.n, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexLabel {
    Outer(usize),
    Inner(usize),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Outer(i) => write!(f, "a_{i}"),
            VertexLabel::Inner(i) => write!(f, "b_{i}"),
        }
    }
}

/// Immutable simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a simple graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{v}, {}}}", w[0])));
            }
        }
        Ok(Self { adjacency, edge_count })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.adjacency
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() })
    }

    /// Unchecked neighbor access for internal hot loops.
    pub(crate) fn adj(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.neighbors(v).map(<[usize]>::len)
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.adjacency.iter().all(|l| l.len() == degree)
    }

    /// All edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// Edge list export: one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Constructs `GP(n,k)`: outer cycle `a_i a_{i+1}`, spokes `a_i b_i`, inner
/// chords `b_i b_{i+k}`, all indices modulo `n`.
pub fn build_gp(params: GpParams) -> Graph {
    let n = params.n();
    let k = params.k();
    let mut adjacency = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut list = vec![params.outer(i + 1), params.outer(i + n - 1), params.inner(i)];
        list.sort_unstable();
        adjacency.push(list);
    }
    for i in 0..n {
        let mut list = vec![params.outer(i), params.inner(i + k), params.inner(i + n - k)];
        list.sort_unstable();
        adjacency.push(list);
    }
    Graph { adjacency, edge_count: 3 * n }
}

/// Distance from every vertex to the nearest source.
pub fn bfs_distances(g: &Graph, sources: &[usize]) -> Result<Vec<usize>> {
    if sources.is_empty() {
        return Err(Error::EmptySources);
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        g.neighbors(s)?;
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.adj(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    match dist.iter().position(|&d| d == usize::MAX) {
        Some(v) => Err(Error::Disconnected(v)),
        None => Ok(dist),
    }
}
