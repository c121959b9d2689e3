//! Equitable partitions, distance partitions and completely regular codes.
//!
//! A code `C` is completely regular when the partition of the vertices by
//! distance to `C` is equitable. Small graphs (at most [`SUBSET_LIMIT`]
//! vertices) can be scanned exhaustively with [`enumerate_crc`]; vertex sets
//! are then handled as `u32` bitmasks.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, ParameterMatrix};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, GpParams, Graph};
use crate::search::SCHEMA_VERSION;

/// Largest vertex count accepted by the exhaustive subset scan.
pub const SUBSET_LIMIT: usize = 26;

/// Quotient matrix of an equitable partition; entry `(i, j)` counts the
/// neighbors in cell `j` of any vertex in cell `i`.
pub type QuotientMatrix = ParameterMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    /// Validates that `cells` are nonempty, pairwise disjoint and cover
    /// `0..vertex_count`. Each cell is sorted.
    pub fn new(cells: Vec<Vec<usize>>, vertex_count: usize) -> Result<Self> {
        let mut cell_of = vec![usize::MAX; vertex_count];
        let mut cells = cells;
        for (i, cell) in cells.iter_mut().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidPartition(format!("cell {i} is empty")));
            }
            cell.sort_unstable();
            for &v in cell.iter() {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
                }
                if cell_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                cell_of[v] = i;
            }
        }
        if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self { cells, cell_of })
    }

    /// Color classes of `c`, in color order.
    pub fn from_coloring(c: &Coloring) -> Result<Self> {
        c.check_surjective()?;
        let cells = (1..=c.m()).map(|color| c.class(color)).collect();
        Self::new(cells, c.len())
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.cell_of.len()
    }
}

fn normalize_code(g: &Graph, code: &[usize]) -> Result<Vec<usize>> {
    let nv = g.vertex_count();
    let set: BTreeSet<usize> = code.iter().copied().collect();
    if let Some(&v) = set.iter().find(|&&v| v >= nv) {
        return Err(Error::VertexOutOfRange { vertex: v, vertex_count: nv });
    }
    if set.is_empty() {
        return Err(Error::InvalidCode("code is empty".into()));
    }
    if set.len() == nv {
        return Err(Error::InvalidCode("code is the whole vertex set".into()));
    }
    Ok(set.into_iter().collect())
}

/// Cells `{v : d(v, code) = r}` for `r = 0..=ρ`.
pub fn distance_partition(g: &Graph, code: &[usize]) -> Result<Partition> {
    let code = normalize_code(g, code)?;
    let dist = bfs_distances(g, &code)?;
    let radius = dist.iter().copied().max().unwrap_or(0);
    let mut cells = vec![Vec::new(); radius + 1];
    for (v, &d) in dist.iter().enumerate() {
        cells[d].push(v);
    }
    Partition::new(cells, g.vertex_count())
}

/// Quotient matrix of `p`, or `None` if some cell's vertices disagree on
/// their neighbor counts.
pub fn is_equitable(g: &Graph, p: &Partition) -> Result<Option<QuotientMatrix>> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices but the graph has {}",
            p.vertex_count(),
            g.vertex_count()
        )));
    }
    let m = p.len();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(m);
    let mut profile = vec![0u32; m];
    for cell in p.cells() {
        let mut first: Option<Vec<u32>> = None;
        for &v in cell {
            profile.fill(0);
            for &w in g.adj(v) {
                profile[p.cell_of(w)] += 1;
            }
            match &first {
                Some(row) if *row != profile => return Ok(None),
                Some(_) => {}
                None => first = Some(profile.clone()),
            }
        }
        rows.push(first.expect("cells are nonempty"));
    }
    ParameterMatrix::new(rows).map(Some)
}

/// A completely regular code together with its distance-partition data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletelyRegular {
    pub code: Vec<usize>,
    pub covering_radius: usize,
    pub quotient: QuotientMatrix,
    /// Radius-ρ balls around the codewords partition the vertex set.
    pub perfect: bool,
}

/// Whether the balls of radius `radius` around the codewords are pairwise
/// disjoint and cover every vertex.
pub fn is_perfect_code(g: &Graph, code: &[usize], radius: usize) -> Result<bool> {
    let code = normalize_code(g, code)?;
    let mut hits = vec![0usize; g.vertex_count()];
    for &c in &code {
        let d = bfs_distances(g, &[c])?;
        for (v, &dv) in d.iter().enumerate() {
            if dv <= radius {
                hits[v] += 1;
            }
        }
    }
    Ok(hits.iter().all(|&h| h == 1))
}

pub fn is_completely_regular(g: &Graph, code: &[usize]) -> Result<Option<CompletelyRegular>> {
    let code = normalize_code(g, code)?;
    let partition = distance_partition(g, &code)?;
    let Some(quotient) = is_equitable(g, &partition)? else {
        return Ok(None);
    };
    let covering_radius = partition.len() - 1;
    let perfect = is_perfect_code(g, &code, covering_radius)?;
    Ok(Some(CompletelyRegular { code, covering_radius, quotient, perfect }))
}

/// Bitmask view of a small graph.
struct MaskGraph {
    nbrs: Vec<u32>,
    full: u32,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let nbrs = (0..g.vertex_count()).map(|v| g.adj(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
        let full = if g.vertex_count() == 32 { u32::MAX } else { (1u32 << g.vertex_count()) - 1 };
        Self { nbrs, full }
    }

    fn expand(&self, set: u32) -> u32 {
        bits(set).fold(set, |acc, v| acc | self.nbrs[v])
    }

    /// Distance layers of `code`, or `None` if the graph is disconnected
    /// from it.
    fn layers(&self, code: u32) -> Option<Vec<u32>> {
        let mut layers = vec![code];
        let mut seen = code;
        while seen != self.full {
            let next = self.expand(*layers.last().expect("nonempty")) & !seen;
            if next == 0 {
                return None;
            }
            seen |= next;
            layers.push(next);
        }
        Some(layers)
    }

    /// Tridiagonal quotient of the distance partition, stopping at the first
    /// vertex whose neighbor profile disagrees with its layer.
    fn equitable_layers(&self, layers: &[u32]) -> Option<Vec<Vec<u32>>> {
        let m = layers.len();
        let mut rows = Vec::with_capacity(m);
        for (i, &layer) in layers.iter().enumerate() {
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(m - 1);
            let profile = |v: usize| -> [u32; 3] {
                let mut p = [0; 3];
                for (slot, j) in (lo..=hi).enumerate() {
                    p[slot] = (self.nbrs[v] & layers[j]).count_ones();
                }
                p
            };
            let mut vs = bits(layer);
            let first = profile(vs.next().expect("nonempty layer"));
            if vs.any(|v| profile(v) != first) {
                return None;
            }
            let mut row = vec![0; m];
            for (slot, j) in (lo..=hi).enumerate() {
                row[j] = first[slot];
            }
            rows.push(row);
        }
        Some(rows)
    }

    fn ball(&self, v: usize, radius: usize) -> u32 {
        (0..radius).fold(1u32 << v, |acc, _| self.expand(acc))
    }

    fn perfect(&self, code: u32, radius: usize) -> bool {
        let mut covered = 0u32;
        for v in bits(code) {
            let b = self.ball(v, radius);
            if covered & b != 0 {
                return false;
            }
            covered |= b;
        }
        covered == self.full
    }
}

fn bits(mut set: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            return None;
        }
        let v = set.trailing_zeros() as usize;
        set &= set - 1;
        Some(v)
    })
}

/// Successive `ones`-bit masks of width `width`, in increasing numeric order.
fn combinations(width: usize, ones: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << width;
    let start: u64 = if ones > width { limit } else { (1u64 << ones) - 1 };
    let mut cur = start;
    let empty = ones == 0;
    let mut emitted_empty = false;
    std::iter::from_fn(move || {
        if empty {
            if emitted_empty {
                return None;
            }
            emitted_empty = true;
            return Some(0);
        }
        if cur >= limit {
            return None;
        }
        let out = cur as u32;
        let low = cur & cur.wrapping_neg();
        let ripple = cur + low;
        cur = (((ripple ^ cur) >> 2) / low) | ripple;
        Some(out)
    })
}

/// All completely regular codes of `size` vertices, in lexicographic order
/// of their sorted vertex lists. The scan is split by smallest element
/// across `workers` threads.
pub fn enumerate_crc(g: &Graph, size: usize, workers: usize) -> Result<Vec<CompletelyRegular>> {
    let nv = g.vertex_count();
    if nv > SUBSET_LIMIT {
        return Err(Error::GuardExceeded { vertex_count: nv, limit: SUBSET_LIMIT });
    }
    if size == 0 || size >= nv {
        return Err(Error::InvalidCode(format!("code size must lie in 1..{nv}, got {size}")));
    }
    bfs_distances(g, &[0])?;
    let mg = MaskGraph::new(g);

    let scan = |smallest: usize| -> Vec<CompletelyRegular> {
        let shift = smallest + 1;
        let mut found: Vec<CompletelyRegular> = combinations(nv - shift, size - 1)
            .filter_map(|rest| {
                let code = (1u32 << smallest) | (rest << shift);
                let layers = mg.layers(code)?;
                let rows = mg.equitable_layers(&layers)?;
                let radius = layers.len() - 1;
                Some(CompletelyRegular {
                    code: bits(code).collect(),
                    covering_radius: radius,
                    quotient: ParameterMatrix::new(rows).expect("square"),
                    perfect: mg.perfect(code, radius),
                })
            })
            .collect();
        found.sort_by(|a, b| a.code.cmp(&b.code));
        found
    };

    let starts: Vec<usize> = (0..=nv - size).collect();
    let chunks: Vec<Vec<CompletelyRegular>> = if workers <= 1 {
        starts.into_iter().map(scan).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
        pool.install(|| starts.into_par_iter().map(scan).collect())
    };
    Ok(chunks.into_iter().flatten().collect())
}

/// Identification rules used when counting codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DedupRule {
    /// Every vertex set counted separately.
    Raw,
    /// A code identified with its complement.
    Complement,
    /// Codes identified under the rotations `i -> i + s`.
    Rotation,
    /// Rotations and complements.
    RotationComplement,
    /// Rotations and the reflection `i -> -i`.
    Dihedral,
    /// Rotations, reflection and complements.
    DihedralComplement,
}

impl DedupRule {
    pub const ALL: [DedupRule; 6] = [
        DedupRule::Raw,
        DedupRule::Complement,
        DedupRule::Rotation,
        DedupRule::RotationComplement,
        DedupRule::Dihedral,
        DedupRule::DihedralComplement,
    ];

    fn uses_complement(self) -> bool {
        matches!(self, DedupRule::Complement | DedupRule::RotationComplement | DedupRule::DihedralComplement)
    }
}

impl fmt::Display for DedupRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DedupRule::Raw => "raw",
            DedupRule::Complement => "complement",
            DedupRule::Rotation => "rotation",
            DedupRule::RotationComplement => "rotation+complement",
            DedupRule::Dihedral => "dihedral",
            DedupRule::DihedralComplement => "dihedral+complement",
        })
    }
}

fn to_mask(code: &[usize]) -> u32 {
    code.iter().fold(0, |m, &v| m | (1 << v))
}

/// Smallest mask in the orbit of `code` under the group selected by `rule`.
fn orbit_key(p: GpParams, code: u32, rule: DedupRule) -> u32 {
    let full = (1u32 << p.vertex_count()) - 1;
    let map = |f: &dyn Fn(usize) -> usize| bits(code).fold(0u32, |m, v| m | (1 << f(v)));
    let shifts = match rule {
        DedupRule::Raw | DedupRule::Complement => 1,
        _ => p.n(),
    };
    let reflect = matches!(rule, DedupRule::Dihedral | DedupRule::DihedralComplement);
    let mut best = u32::MAX;
    for s in 0..shifts {
        let mut images = vec![map(&|v| p.rotate(v, s))];
        if reflect {
            images.push(map(&|v| p.rotate(p.reflect(v), s)));
        }
        for img in images {
            best = best.min(img);
            if rule.uses_complement() {
                best = best.min(full & !img);
            }
        }
    }
    best
}

/// Number of classes of `codes` under `rule`.
pub fn count_classes(p: GpParams, codes: &[CompletelyRegular], rule: DedupRule) -> usize {
    codes.iter().map(|c| orbit_key(p, to_mask(&c.code), rule)).collect::<BTreeSet<_>>().len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCount {
    pub rule: DedupRule,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrcReport {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub codes: Vec<CompletelyRegular>,
    pub counts: Vec<RuleCount>,
    pub perfect_count: usize,
}

impl CrcReport {
    pub fn count(&self, rule: DedupRule) -> usize {
        self.counts.iter().find(|c| c.rule == rule).map_or(0, |c| c.count)
    }

    /// Rules under which exactly `target` classes remain.
    pub fn rules_yielding(&self, target: usize) -> Vec<DedupRule> {
        self.counts.iter().filter(|c| c.count == target).map(|c| c.rule).collect()
    }
}

/// Exhaustive completely-regular-code report for `GP(n,k)` and one code size.
pub fn crc_report(p: GpParams, size: usize, workers: usize) -> Result<CrcReport> {
    let g = crate::graph::build_gp(p);
    let codes = enumerate_crc(&g, size, workers)?;
    let counts = DedupRule::ALL.iter().map(|&rule| RuleCount { rule, count: count_classes(p, &codes, rule) }).collect();
    let perfect_count = codes.iter().filter(|c| c.perfect).count();
    Ok(CrcReport { schema_version: SCHEMA_VERSION, n: p.n(), k: p.k(), size, codes, counts, perfect_count })
}
