//! Perfect 2-colorings of generalized Petersen graphs.
//!
//! The crate builds `GP(n,k)`, checks and exhaustively enumerates perfect
//! colorings (equitable partitions) for each admissible parameter matrix,
//! emits the known closed-form colorings, and tests vertex subsets for being
//! completely regular codes.
//!
//! Exhaustive search settles existence one instance at a time. A count of
//! zero for some `(n, k)` says nothing about other values of `n`.

pub mod coloring;
pub mod constructions;
pub mod crc;
pub mod error;
pub mod graph;
pub mod search;

pub use coloring::{
    candidate_matrices, canonical_under_swap, derive_matrix, divisibility_admissible, matrix2, verify_coloring,
    white_count, Coloring, MatrixId, ParameterMatrix, Verdict, Violation,
};
pub use constructions::{
    construct, construct_a1, construct_a3, construct_a4, construct_a5, construct_a6, predict_existence, Existence,
    ExistencePrediction,
};
pub use error::{Error, Result};
pub use graph::{bfs_distances, build_gp, GpParams, Graph, VertexLabel};
pub use search::{
    brute_force_colorings, existence_sweep, search_colorings, search_gp, GraphTag, SearchOptions, SearchReport,
    SweepCell,
};
