use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters GP({n},{k}): {reason}")]
    InvalidParams { n: usize, k: usize, reason: &'static str },

    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected: vertex {0} is unreachable")]
    Disconnected(usize),

    #[error("source set is empty")]
    EmptySources,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vertex {vertex} has color {color}, expected a color in 1..={colors}")]
    InvalidColor { vertex: usize, color: u8, colors: u8 },

    #[error("coloring is not surjective: color {0} is unused")]
    NotSurjective(u8),

    #[error("operation requires exactly 2 colors, got {0}")]
    NotTwoColors(u8),

    #[error("zero denominator: a12 + a21 = 0")]
    ZeroDenominator,

    #[error("no closed-form {matrix} coloring for GP({n},{k}): {reason}")]
    NoConstruction { matrix: &'static str, n: usize, k: usize, reason: &'static str },

    #[error("{vertex_count} vertices exceeds the exhaustive-scan limit of {limit} vertices")]
    GuardExceeded { vertex_count: usize, limit: usize },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
