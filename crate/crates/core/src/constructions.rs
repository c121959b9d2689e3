//! Closed-form perfect 2-colorings and the closed-form existence table.
//!
//! Every mapping is periodic in the index `i` and wraps modulo `n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, MatrixId};
use crate::error::{Error, Result};
use crate::graph::GpParams;

fn from_layers(p: GpParams, outer: impl Fn(usize) -> bool, inner: impl Fn(usize) -> bool) -> Coloring {
    let white = |b: bool| if b { 1 } else { 2 };
    let colors = (0..p.n()).map(|i| white(outer(i))).chain((0..p.n()).map(|i| white(inner(i)))).collect();
    Coloring::new(colors, 2).expect("colors are 1 or 2")
}

fn refuse(matrix: MatrixId, p: GpParams, reason: &'static str) -> Error {
    Error::NoConstruction { matrix: matrix.name(), n: p.n(), k: p.k(), reason }
}

/// Outer cycle white, inner vertices black. Perfect with A1 on every `GP(n,k)`.
pub fn construct_a1(p: GpParams) -> Coloring {
    from_layers(p, |_| true, |_| false)
}

/// `a_i`, `b_i` white for even `i`, black for odd `i`, on `GP(2m,3)`.
pub fn construct_a3(p: GpParams) -> Result<Coloring> {
    if p.k() != 3 {
        return Err(refuse(MatrixId::A3, p, "requires k = 3"));
    }
    if !p.n().is_multiple_of(2) {
        return Err(refuse(MatrixId::A3, p, "requires n even"));
    }
    Ok(from_layers(p, |i| i % 2 == 0, |i| i % 2 == 0))
}

/// White exactly on `{a_4i} ∪ {b_4i+2}`, on `GP(4m,3)`.
pub fn construct_a4(p: GpParams) -> Result<Coloring> {
    if p.k() != 3 {
        return Err(refuse(MatrixId::A4, p, "requires k = 3"));
    }
    if !p.n().is_multiple_of(4) {
        return Err(refuse(MatrixId::A4, p, "requires 4 | n"));
    }
    Ok(from_layers(p, |i| i % 4 == 0, |i| i % 4 == 2))
}

/// White exactly on `{a_5i+1, a_5i+4, b_5i+2, b_5i+3}`, on `GP(5m,5t+2)` and
/// `GP(5m,5t+3)`.
pub fn construct_a5(p: GpParams) -> Result<Coloring> {
    if !p.n().is_multiple_of(5) {
        return Err(refuse(MatrixId::A5, p, "requires 5 | n"));
    }
    if !matches!(p.k() % 5, 2 | 3) {
        return Err(refuse(MatrixId::A5, p, "requires k = 2 or 3 (mod 5)"));
    }
    Ok(from_layers(p, |i| matches!(i % 5, 1 | 4), |i| matches!(i % 5, 2 | 3)))
}

/// Bipartition by parity: `a_i` white for even `i`, `b_i` white for odd `i`.
/// Proper exactly when `n` is even and `k` is odd.
pub fn construct_a6(p: GpParams) -> Result<Coloring> {
    if !p.n().is_multiple_of(2) {
        return Err(refuse(MatrixId::A6, p, "requires n even"));
    }
    if p.k().is_multiple_of(2) {
        return Err(refuse(MatrixId::A6, p, "requires k odd"));
    }
    Ok(from_layers(p, |i| i % 2 == 0, |i| i % 2 == 1))
}

/// Dispatches to the closed-form construction for `id`, if one applies.
pub fn construct(p: GpParams, id: MatrixId) -> Result<Coloring> {
    match id {
        MatrixId::A1 => Ok(construct_a1(p)),
        MatrixId::A2 => Err(refuse(MatrixId::A2, p, "no closed-form construction is known")),
        MatrixId::A3 => construct_a3(p),
        MatrixId::A4 => construct_a4(p),
        MatrixId::A5 => construct_a5(p),
        MatrixId::A6 => construct_a6(p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Existence {
    Exists,
    Absent,
    Unknown,
}

impl Existence {
    fn from_bool(b: bool) -> Self {
        if b {
            Existence::Exists
        } else {
            Existence::Absent
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Existence::Exists => Some(true),
            Existence::Absent => Some(false),
            Existence::Unknown => None,
        }
    }
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::Exists => "yes",
            Existence::Absent => "no",
            Existence::Unknown => "?",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistencePrediction {
    pub matrix: MatrixId,
    /// Family the table cell describes, e.g. `GP(4m,3)`.
    pub family: String,
    pub existence: Existence,
    pub witness_available: bool,
}

/// Closed-form existence of a perfect 2-coloring of `GP(n,k)` with matrix `id`.
///
/// The `k = 2` and `k = 3` columns are complete. For other `k` only A1, A6
/// and the A5 cases settled by construction or by the white-count
/// divisibility are decided; every other cell is [`Existence::Unknown`].
pub fn predict_existence(p: GpParams, id: MatrixId) -> ExistencePrediction {
    let n = p.n();
    let (family, existence) = match (p.k(), id) {
        (_, MatrixId::A1) => ("all graphs".to_string(), Existence::Exists),

        (2, MatrixId::A2) => ("GP(3m,2)".into(), Existence::from_bool(n.is_multiple_of(3))),
        (2, MatrixId::A3 | MatrixId::A4 | MatrixId::A6) => ("no graphs".into(), Existence::Absent),
        (2, MatrixId::A5) => ("GP(5m,2)".into(), Existence::from_bool(n.is_multiple_of(5))),

        (3, MatrixId::A2) => ("no graphs".into(), Existence::Absent),
        (3, MatrixId::A3 | MatrixId::A6) => ("GP(2m,3)".into(), Existence::from_bool(n.is_multiple_of(2))),
        (3, MatrixId::A4) => ("GP(4m,3)".into(), Existence::from_bool(n.is_multiple_of(4))),
        (3, MatrixId::A5) => ("GP(5m,3)".into(), Existence::from_bool(n.is_multiple_of(5))),

        (k, MatrixId::A6) => ("GP(2m,2t+1)".into(), Existence::from_bool(n.is_multiple_of(2) && k % 2 == 1)),
        (k, MatrixId::A5) => {
            let e = if !n.is_multiple_of(5) {
                Existence::Absent
            } else if matches!(k % 5, 2 | 3) {
                Existence::Exists
            } else {
                Existence::Unknown
            };
            ("GP(5m,5t+2), GP(5m,5t+3)".into(), e)
        }
        (_, MatrixId::A2 | MatrixId::A3 | MatrixId::A4) => ("?".into(), Existence::Unknown),
    };
    ExistencePrediction { matrix: id, family, existence, witness_available: construct(p, id).is_ok() }
}
