//! Vertex colorings, parameter matrices and the perfect-coloring check.
//!
//! Colors are 1-based (`1..=m`) throughout, and so are the matrix accessors:
//! `a(i, j)` is the number of color-`j` neighbors every color-`i` vertex must
//! have. In the two-color case color 1 is "white" and color 2 is "black".

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total assignment of colors `1..=m` to the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<u8>,
    m: u8,
}

impl Coloring {
    pub fn new(colors: Vec<u8>, m: u8) -> Result<Self> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > m) {
            return Err(Error::InvalidColor { vertex, color, colors: m });
        }
        Ok(Self { colors, m })
    }

    /// Parses a digit string such as `"1122"` as an `m`-coloring.
    pub fn parse_with(s: &str, m: u8) -> Result<Self> {
        let colors = s
            .trim()
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("unexpected character {ch:?} in coloring string")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(colors, m)
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    /// Number of vertices carrying `color`.
    pub fn class_size(&self, color: u8) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn class(&self, color: u8) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == color).collect()
    }

    pub fn check_surjective(&self) -> Result<()> {
        match (1..=self.m).find(|&c| !self.colors.contains(&c)) {
            Some(c) => Err(Error::NotSurjective(c)),
            None => Ok(()),
        }
    }

    /// Exchanges colors 1 and 2.
    pub fn swapped(&self) -> Result<Self> {
        if self.m != 2 {
            return Err(Error::NotTwoColors(self.m));
        }
        Ok(Self { colors: self.colors.iter().map(|&c| 3 - c).collect(), m: 2 })
    }

    /// Relabels vertices: the result gives vertex `map(v)` the color of `v`.
    pub fn permuted(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut colors = vec![0; self.colors.len()];
        for (v, &c) in self.colors.iter().enumerate() {
            colors[map(v)] = c;
        }
        Self { colors, m: self.m }
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.colors {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Coloring {
    type Err = Error;

    /// Two-coloring over the alphabet `{1,2}`.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, 2)
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let m = s.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(0).max(2) as u8;
        Coloring::parse_with(&s, m).map_err(serde::de::Error::custom)
    }
}

/// Square matrix of neighbor counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParameterMatrix {
    m: usize,
    entries: Vec<u32>,
}

impl ParameterMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::DimensionMismatch("matrix has no rows".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a {m}x{m} matrix", r.len())));
        }
        Ok(Self { m, entries: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// Entry `a_ij` for 1-based colors `i`, `j`.
    pub fn a(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.m + (j - 1)]
    }

    /// Row for 1-based color `i`.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[(i - 1) * self.m..i * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.m).map(<[u32]>::to_vec).collect()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.chunks(self.m).map(|r| r.iter().sum()).collect()
    }

    /// Matrix of the color-swapped coloring: `[[a22,a21],[a12,a11]]`.
    pub fn swapped(&self) -> Result<Self> {
        if self.m != 2 {
            return Err(Error::NotTwoColors(self.m as u8));
        }
        Ok(matrix2(self.a(2, 2), self.a(2, 1), self.a(1, 2), self.a(1, 1)))
    }

    /// True when swapping the colors leaves the matrix unchanged.
    pub fn is_swap_symmetric(&self) -> bool {
        self.swapped().is_ok_and(|s| &s == self)
    }
}

/// Shorthand for the 2x2 matrix `[[a11,a12],[a21,a22]]`.
pub fn matrix2(a11: u32, a12: u32, a21: u32, a22: u32) -> ParameterMatrix {
    ParameterMatrix { m: 2, entries: vec![a11, a12, a21, a22] }
}

impl fmt::Display for ParameterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.m).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl FromStr for ParameterMatrix {
    type Err = Error;

    /// Parses `[[a11,a12],[a21,a22]]` (whitespace tolerated).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed matrix {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact.strip_prefix("[[").and_then(|r| r.strip_suffix("]]")).ok_or_else(bad)?;
        let rows = body
            .split("],[")
            .map(|row| row.split(',').map(|x| x.parse::<u32>().map_err(|_| bad())).collect())
            .collect::<Result<Vec<Vec<u32>>>>()?;
        Self::new(rows)
    }
}

impl Serialize for ParameterMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParameterMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(deserializer)?;
        ParameterMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

/// The six admissible parameter matrices of a perfect 2-coloring of a
/// connected cubic graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
}

impl MatrixId {
    pub const ALL: [MatrixId; 6] = [MatrixId::A1, MatrixId::A2, MatrixId::A3, MatrixId::A4, MatrixId::A5, MatrixId::A6];

    pub fn matrix(self) -> ParameterMatrix {
        match self {
            MatrixId::A1 => matrix2(2, 1, 1, 2),
            MatrixId::A2 => matrix2(2, 1, 2, 1),
            MatrixId::A3 => matrix2(1, 2, 2, 1),
            MatrixId::A4 => matrix2(0, 3, 1, 2),
            MatrixId::A5 => matrix2(0, 3, 2, 1),
            MatrixId::A6 => matrix2(0, 3, 3, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MatrixId::A1 => "A1",
            MatrixId::A2 => "A2",
            MatrixId::A3 => "A3",
            MatrixId::A4 => "A4",
            MatrixId::A5 => "A5",
            MatrixId::A6 => "A6",
        }
    }

    /// Identifies a matrix with one of A1..A6, modulo color swap.
    pub fn identify(a: &ParameterMatrix) -> Option<MatrixId> {
        let swapped = a.swapped().ok()?;
        Self::ALL.into_iter().find(|id| {
            let m = id.matrix();
            &m == a || m == swapped
        })
    }
}

impl fmt::Display for MatrixId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown matrix {s:?}, expected A1..A6")))
    }
}

/// A vertex whose neighbor counts disagree with its row of the matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: usize,
    pub color: u8,
    pub expected: Vec<u32>,
    pub observed: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Perfect,
    Violated(Vec<Violation>),
}

impl Verdict {
    pub fn is_perfect(&self) -> bool {
        matches!(self, Verdict::Perfect)
    }
}

fn check_dimensions(g: &Graph, c: &Coloring) -> Result<()> {
    if c.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "coloring has {} entries but the graph has {} vertices",
            c.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Counts, for vertex `v`, how many neighbors carry each color.
fn neighbor_profile(g: &Graph, colors: &[u8], v: usize, profile: &mut [u32]) {
    profile.fill(0);
    for &w in g.adj(v) {
        profile[colors[w] as usize - 1] += 1;
    }
}

/// Allocation-free perfectness test; `profile` must have length `a.size()`
/// and `colors` must already be validated against `g` and `a`.
pub(crate) fn satisfies(g: &Graph, colors: &[u8], a: &ParameterMatrix, profile: &mut [u32]) -> bool {
    (0..g.vertex_count()).all(|v| {
        neighbor_profile(g, colors, v, profile);
        profile == a.row(colors[v] as usize)
    })
}

/// Checks that every vertex of color `i` has exactly `a_ij` neighbors of
/// color `j`, reporting every offending vertex.
pub fn verify_coloring(g: &Graph, c: &Coloring, a: &ParameterMatrix) -> Result<Verdict> {
    check_dimensions(g, c)?;
    if a.size() != c.m() as usize {
        return Err(Error::DimensionMismatch(format!(
            "{}-coloring checked against a {}x{} matrix",
            c.m(),
            a.size(),
            a.size()
        )));
    }
    c.check_surjective()?;
    let mut profile = vec![0; a.size()];
    let mut violations = Vec::new();
    for v in 0..g.vertex_count() {
        neighbor_profile(g, c.colors(), v, &mut profile);
        let expected = a.row(c.color(v) as usize);
        if profile != expected {
            violations.push(Violation {
                vertex: v,
                color: c.color(v),
                expected: expected.to_vec(),
                observed: profile.clone(),
            });
        }
    }
    Ok(if violations.is_empty() { Verdict::Perfect } else { Verdict::Violated(violations) })
}

/// The parameter matrix of `c`, or `None` when same-colored vertices
/// disagree on their neighbor counts.
pub fn derive_matrix(g: &Graph, c: &Coloring) -> Result<Option<ParameterMatrix>> {
    check_dimensions(g, c)?;
    c.check_surjective()?;
    let m = c.m() as usize;
    let mut rows: Vec<Option<Vec<u32>>> = vec![None; m];
    let mut profile = vec![0; m];
    for v in 0..g.vertex_count() {
        neighbor_profile(g, c.colors(), v, &mut profile);
        let slot = &mut rows[c.color(v) as usize - 1];
        match slot {
            Some(row) if *row != profile => return Ok(None),
            Some(_) => {}
            None => *slot = Some(profile.clone()),
        }
    }
    let rows = rows.into_iter().map(|r| r.expect("surjective coloring fills every row")).collect();
    ParameterMatrix::new(rows).map(Some)
}

/// Chooses the representative of `{a, swap(a)}`: a white class that is an
/// independent set (`a_11 = 0`) wins, otherwise the larger `(a_11, a_12)`.
fn swap_representative(a: ParameterMatrix) -> ParameterMatrix {
    let s = a.swapped().expect("2x2");
    let key = |x: &ParameterMatrix| (x.a(1, 1) == 0, x.a(1, 1), x.a(1, 2));
    if key(&s) > key(&a) {
        s
    } else {
        a
    }
}

/// All 2x2 parameter matrices of a perfect 2-coloring of a connected
/// `degree`-regular graph, one per color-swap class.
///
/// For `degree = 3` this is A1..A6 in that order.
pub fn candidate_matrices(degree: u32) -> Vec<ParameterMatrix> {
    let mut out: Vec<ParameterMatrix> = Vec::new();
    for a12 in 1..=degree {
        for a21 in 1..=degree {
            let rep = swap_representative(matrix2(degree - a12, a12, a21, degree - a21));
            if !out.contains(&rep) {
                out.push(rep);
            }
        }
    }
    out.sort_by_key(|a| (std::cmp::Reverse(a.a(1, 1)), a.a(2, 1)));
    out
}

/// Size of the white class forced by a perfect 2-coloring with matrix `a`
/// on a graph of `vertex_count` vertices: `|V| * a21 / (a12 + a21)`.
pub fn white_count(a: &ParameterMatrix, vertex_count: u64) -> Result<Ratio<u64>> {
    if a.size() != 2 {
        return Err(Error::NotTwoColors(a.size() as u8));
    }
    let denom = u64::from(a.a(1, 2)) + u64::from(a.a(2, 1));
    if denom == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Ratio::new(vertex_count * u64::from(a.a(2, 1)), denom))
}

/// Necessary condition for existence: the white count is an integer with
/// both color classes nonempty.
pub fn divisibility_admissible(a: &ParameterMatrix, vertex_count: u64) -> bool {
    white_count(a, vertex_count).is_ok_and(|w| w.is_integer() && *w.numer() > 0 && w.to_integer() < vertex_count)
}

/// The lexicographically smaller of `c` and its color swap.
pub fn canonical_under_swap(c: &Coloring) -> Result<Coloring> {
    let s = c.swapped()?;
    Ok(if s.colors < c.colors { s } else { c.clone() })
}
