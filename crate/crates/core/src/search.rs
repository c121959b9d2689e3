//! Exact enumeration of perfect 2-colorings.
//!
//! [`search_colorings`] is a backtracking search with counting propagation:
//! every vertex tracks how many of its neighbors are already white, black or
//! unassigned, and a color is allowed only if it keeps both the vertex and all
//! of its assigned neighbors within their matrix rows. An unassigned vertex
//! left with one allowed color is assigned immediately.
//!
//! [`brute_force_colorings`] is the independent oracle: it walks all
//! `2^|V|` assignments and checks each one directly.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{canonical_under_swap, divisibility_admissible, satisfies, Coloring, MatrixId, ParameterMatrix};
use crate::error::{Error, Result};
use crate::graph::{build_gp, GpParams, Graph};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest graph the brute-force oracle will scan.
pub const BRUTE_FORCE_LIMIT: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphTag {
    Gp { n: usize, k: usize },
    Generic { vertex_count: usize },
}

impl From<GpParams> for GraphTag {
    fn from(p: GpParams) -> Self {
        GraphTag::Gp { n: p.n(), k: p.k() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineKind {
    Backtracking,
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Keep the witnesses in the report.
    pub collect: bool,
    /// Report one coloring per swap pair; ignored unless the matrix is
    /// swap-symmetric.
    pub dedup_swap: bool,
    /// Stop at the first witness.
    pub existence_only: bool,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { collect: false, dedup_swap: false, existence_only: false, workers: 1 }
    }
}

impl SearchOptions {
    pub fn collecting() -> Self {
        Self { collect: true, ..Self::default() }
    }

    pub fn existence() -> Self {
        Self { collect: true, existence_only: true, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub graph: GraphTag,
    pub matrix: ParameterMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_id: Option<MatrixId>,
    pub engine: EngineKind,
    pub existence_only: bool,
    /// Whether swap deduplication was actually applied.
    pub dedup_swap: bool,
    pub count: u64,
    pub witnesses: Vec<Coloring>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    /// Count from the brute-force oracle, when a cross-check was run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_count: Option<u64>,
}

impl SearchReport {
    /// Copy with the timing field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        Self { elapsed_ms: 0, ..self.clone() }
    }
}

fn check_matrix(a: &ParameterMatrix) -> Result<[[u32; 2]; 2]> {
    if a.size() != 2 {
        return Err(Error::NotTwoColors(a.size() as u8));
    }
    Ok([[a.a(1, 1), a.a(1, 2)], [a.a(2, 1), a.a(2, 2)]])
}

/// Vertex order `a_0, b_0, a_1, b_1, ...`.
pub fn interleaved_order(p: GpParams) -> Vec<usize> {
    (0..p.n()).flat_map(|i| [p.outer(i), p.inner(i)]).collect()
}

/// Search state. Colors are stored 0-based internally (0 white, 1 black);
/// `UNSET` marks an unassigned vertex.
#[derive(Clone)]
struct State<'g> {
    g: &'g Graph,
    rows: [[u32; 2]; 2],
    color: Vec<u8>,
    committed: Vec<[u32; 2]>,
    open: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

const UNSET: u8 = u8::MAX;

impl<'g> State<'g> {
    fn new(g: &'g Graph, rows: [[u32; 2]; 2]) -> Self {
        let nv = g.vertex_count();
        Self {
            g,
            rows,
            color: vec![UNSET; nv],
            committed: vec![[0, 0]; nv],
            open: (0..nv).map(|v| g.adj(v).len() as u32).collect(),
            trail: Vec::with_capacity(nv),
            queue: Vec::new(),
        }
    }

    fn bounds_ok(&self, c: usize, committed: [u32; 2], open: u32) -> bool {
        let row = self.rows[c];
        (0..2).all(|j| committed[j] <= row[j] && committed[j] + open >= row[j])
    }

    /// Can `u` take color `c` without breaking its own row or the row of an
    /// assigned neighbor?
    fn allowed(&self, u: usize, c: usize) -> bool {
        if !self.bounds_ok(c, self.committed[u], self.open[u]) {
            return false;
        }
        self.g.adj(u).iter().all(|&w| {
            let cw = self.color[w];
            if cw == UNSET {
                return true;
            }
            let mut committed = self.committed[w];
            committed[c] += 1;
            self.bounds_ok(cw as usize, committed, self.open[w] - 1)
        })
    }

    fn assign(&mut self, u: usize, c: usize) {
        self.color[u] = c as u8;
        self.trail.push(u);
        for &w in self.g.adj(u) {
            self.committed[w][c] += 1;
            self.open[w] -= 1;
            if self.color[w] == UNSET {
                self.queue.push(w);
            }
            for &x in self.g.adj(w) {
                if self.color[x] == UNSET {
                    self.queue.push(x);
                }
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let u = self.trail.pop().expect("trail longer than mark");
            let c = self.color[u] as usize;
            for &w in self.g.adj(u) {
                self.committed[w][c] -= 1;
                self.open[w] += 1;
            }
            self.color[u] = UNSET;
        }
    }

    /// Assigns `c` to `u` and runs propagation to a fixpoint. Returns false
    /// on contradiction; the caller is responsible for undoing.
    fn try_assign(&mut self, u: usize, c: usize) -> bool {
        self.queue.clear();
        if !self.allowed(u, c) {
            return false;
        }
        self.assign(u, c);
        while let Some(v) = self.queue.pop() {
            if self.color[v] != UNSET {
                continue;
            }
            match (self.allowed(v, 0), self.allowed(v, 1)) {
                (false, false) => {
                    self.queue.clear();
                    return false;
                }
                (true, false) => self.assign(v, 0),
                (false, true) => self.assign(v, 1),
                (true, true) => {}
            }
        }
        true
    }

    fn coloring(&self) -> Option<Coloring> {
        let colors: Vec<u8> = self.color.iter().map(|&c| c + 1).collect();
        let c = Coloring::new(colors, 2).expect("complete assignment");
        c.check_surjective().ok().map(|_| c)
    }
}

/// One piece of the sequential search order: either a witness found above
/// the split depth or a subtree handed to a worker.
enum Item {
    Witness(Coloring),
    Subtree(Vec<(usize, usize)>),
}

struct Frontier {
    items: Vec<(Item, u64)>,
    nodes: u64,
}

struct Walker<'o> {
    order: &'o [usize],
    existence_only: bool,
    nodes: u64,
    witnesses: Vec<Coloring>,
    split_depth: Option<usize>,
    frontier: Vec<(Item, u64)>,
    path: Vec<(usize, usize)>,
}

impl Walker<'_> {
    fn done(&self) -> bool {
        self.existence_only && !self.witnesses.is_empty()
    }

    fn dfs(&mut self, state: &mut State<'_>, cursor: usize) {
        let Some(pos) = (cursor..self.order.len()).find(|&i| state.color[self.order[i]] == UNSET) else {
            if let Some(c) = state.coloring() {
                match self.split_depth {
                    Some(_) => self.frontier.push((Item::Witness(c), self.nodes)),
                    None => self.witnesses.push(c),
                }
            }
            return;
        };
        if self.split_depth == Some(self.path.len()) {
            self.frontier.push((Item::Subtree(self.path.clone()), self.nodes));
            return;
        }
        let u = self.order[pos];
        for c in 0..2 {
            if self.done() {
                return;
            }
            self.nodes += 1;
            let mark = state.trail.len();
            if state.try_assign(u, c) {
                self.path.push((u, c));
                self.dfs(state, pos + 1);
                self.path.pop();
            }
            state.undo_to(mark);
        }
    }
}

struct Outcome {
    witnesses: Vec<Coloring>,
    nodes: u64,
}

fn run_subtree(
    g: &Graph,
    rows: [[u32; 2]; 2],
    order: &[usize],
    path: &[(usize, usize)],
    existence_only: bool,
) -> Outcome {
    let mut state = State::new(g, rows);
    for &(u, c) in path {
        let ok = state.try_assign(u, c);
        debug_assert!(ok, "replayed prefix must stay consistent");
    }
    let mut walker = Walker {
        order,
        existence_only,
        nodes: 0,
        witnesses: Vec::new(),
        split_depth: None,
        frontier: Vec::new(),
        path: Vec::new(),
    };
    walker.dfs(&mut state, 0);
    Outcome { witnesses: walker.witnesses, nodes: walker.nodes }
}

fn build_frontier(g: &Graph, rows: [[u32; 2]; 2], order: &[usize], depth: usize) -> Frontier {
    let mut state = State::new(g, rows);
    let mut walker = Walker {
        order,
        existence_only: false,
        nodes: 0,
        witnesses: Vec::new(),
        split_depth: Some(depth),
        frontier: Vec::new(),
        path: Vec::new(),
    };
    walker.dfs(&mut state, 0);
    Frontier { items: walker.frontier, nodes: walker.nodes }
}

/// Enumerates witnesses in a fixed order, splitting the tree across
/// `workers` threads when asked. The node count and witness order match the
/// single-threaded run exactly.
fn enumerate(g: &Graph, rows: [[u32; 2]; 2], order: &[usize], existence_only: bool, workers: usize) -> Outcome {
    if workers <= 1 {
        return run_subtree(g, rows, order, &[], existence_only);
    }
    let depth = (usize::BITS - (4 * workers - 1).leading_zeros()) as usize;
    let frontier = build_frontier(g, rows, order, depth);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    let outcomes: Vec<Option<Outcome>> = pool.install(|| {
        frontier
            .items
            .par_iter()
            .map(|(item, _)| match item {
                Item::Subtree(path) => Some(run_subtree(g, rows, order, path, existence_only)),
                Item::Witness(_) => None,
            })
            .collect()
    });

    let mut witnesses = Vec::new();
    let mut subtree_nodes = 0;
    for ((item, frontier_nodes), outcome) in frontier.items.into_iter().zip(outcomes) {
        match (item, outcome) {
            (Item::Witness(c), _) => witnesses.push(c),
            (Item::Subtree(_), Some(o)) => {
                subtree_nodes += o.nodes;
                witnesses.extend(o.witnesses);
            }
            (Item::Subtree(_), None) => unreachable!(),
        }
        if existence_only && !witnesses.is_empty() {
            witnesses.truncate(1);
            return Outcome { witnesses, nodes: frontier_nodes + subtree_nodes };
        }
    }
    Outcome { witnesses, nodes: frontier.nodes + subtree_nodes }
}

fn finish(
    graph: GraphTag,
    a: &ParameterMatrix,
    engine: EngineKind,
    opts: SearchOptions,
    raw: Vec<Coloring>,
    nodes: u64,
    started: Instant,
) -> SearchReport {
    let dedup = opts.dedup_swap && a.is_swap_symmetric();
    let mut witnesses = raw;
    if dedup {
        let mut seen = std::collections::HashSet::new();
        witnesses = witnesses
            .into_iter()
            .map(|c| canonical_under_swap(&c).expect("two colors"))
            .filter(|c| seen.insert(c.clone()))
            .collect();
    }
    let count = witnesses.len() as u64;
    if !opts.collect {
        witnesses.clear();
    }
    SearchReport {
        schema_version: SCHEMA_VERSION,
        graph,
        matrix: a.clone(),
        matrix_id: MatrixId::identify(a),
        engine,
        existence_only: opts.existence_only,
        dedup_swap: dedup,
        count,
        witnesses,
        nodes_explored: nodes,
        elapsed_ms: started.elapsed().as_millis() as u64,
        oracle_count: None,
    }
}

/// Backtracking enumeration of every perfect 2-coloring of `g` with
/// matrix `a`, branching on vertices in `order`.
pub fn search_with_order(g: &Graph, a: &ParameterMatrix, order: &[usize], opts: SearchOptions) -> Result<SearchReport> {
    let rows = check_matrix(a)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..g.vertex_count()).collect::<Vec<_>>() {
        return Err(Error::DimensionMismatch("branching order must be a permutation of the vertices".into()));
    }
    let started = Instant::now();
    let out = enumerate(g, rows, order, opts.existence_only, opts.workers);
    let tag = GraphTag::Generic { vertex_count: g.vertex_count() };
    Ok(finish(tag, a, EngineKind::Backtracking, opts, out.witnesses, out.nodes, started))
}

/// Backtracking enumeration on an arbitrary graph, branching in index order.
pub fn search_colorings(g: &Graph, a: &ParameterMatrix, opts: SearchOptions) -> Result<SearchReport> {
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    search_with_order(g, a, &order, opts)
}

/// Backtracking enumeration on `GP(n,k)`, branching in the order
/// `a_0, b_0, a_1, b_1, ...`.
pub fn search_gp(p: GpParams, a: &ParameterMatrix, opts: SearchOptions) -> Result<SearchReport> {
    let g = build_gp(p);
    let mut report = search_with_order(&g, a, &interleaved_order(p), opts)?;
    report.graph = p.into();
    Ok(report)
}

/// Tests every surjective 2-assignment of `g` against `a` directly.
/// Witnesses are listed in increasing order of the assignment bitmask
/// (bit `v` set means vertex `v` is black).
pub fn brute_force_colorings(g: &Graph, a: &ParameterMatrix) -> Result<SearchReport> {
    check_matrix(a)?;
    let nv = g.vertex_count();
    if nv > BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded { vertex_count: nv, limit: BRUTE_FORCE_LIMIT });
    }
    let started = Instant::now();
    let mut witnesses = Vec::new();
    let mut colors = vec![1u8; nv];
    let mut profile = [0u32; 2];
    let full: u64 = (1u64 << nv) - 1;
    let mut tested = 0;
    for mask in 1..full {
        for (v, c) in colors.iter_mut().enumerate() {
            *c = 1 + ((mask >> v) & 1) as u8;
        }
        tested += 1;
        if satisfies(g, &colors, a, &mut profile) {
            witnesses.push(Coloring::new(colors.clone(), 2).expect("valid colors"));
        }
    }
    let tag = GraphTag::Generic { vertex_count: nv };
    Ok(finish(tag, a, EngineKind::BruteForce, SearchOptions::collecting(), witnesses, tested, started))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCell {
    pub n: usize,
    pub k: usize,
    pub matrix: MatrixId,
    pub admissible: bool,
    pub exists: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
}

/// Existence of a perfect 2-coloring for every `n` in `ns` and every
/// matrix A1..A6. Matrices failing the white-count divisibility filter are
/// reported absent without searching.
pub fn existence_sweep(k: usize, ns: RangeInclusive<usize>, workers: usize) -> Result<Vec<SweepCell>> {
    let params = ns.map(|n| GpParams::new(n, k)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for p in params {
        for id in MatrixId::ALL {
            let a = id.matrix();
            let admissible = divisibility_admissible(&a, p.vertex_count() as u64);
            let (witness, nodes) = if admissible {
                let opts = SearchOptions { workers, ..SearchOptions::existence() };
                let r = search_gp(p, &a, opts)?;
                (r.witnesses.into_iter().next(), r.nodes_explored)
            } else {
                (None, 0)
            };
            out.push(SweepCell {
                n: p.n(),
                k,
                matrix: id,
                admissible,
                exists: witness.is_some(),
                witness,
                nodes_explored: nodes,
            });
        }
    }
    Ok(out)
}
