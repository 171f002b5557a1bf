//! Randomized global minimum cut by recursive edge contraction.
//!
//! The crate is organized around a dense, undoable [`ContractibleGraph`]. On
//! top of it sit the contraction algorithms ([`algorithms`]), exact
//! ground-truth solvers ([`oracle`]), the analytic success-probability
//! recurrences ([`analysis`]) and a seeded, parallel trial harness
//! ([`montecarlo`]) that measures those probabilities empirically.

pub mod algorithms;
pub mod analysis;
pub mod capacity;
pub mod error;
pub mod graph;
pub mod montecarlo;
pub mod oracle;
pub mod rng;

pub use algorithms::{
    fpz_v1, fpz_v2, karger_repeated, karger_single_run, karger_stein, optimal_variant, p_n,
    Algorithm, BranchingPolicy, RunOptions, RunStats,
};
pub use capacity::Capacity;
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use graph::{
    build_graph, cut_value, generate, parse_graph, serialize_graph, ContractibleGraph, Cut,
    Generated, GeneratorKind,
};
pub use montecarlo::{BenchRecord, Event, SuccessEstimate};
pub use rng::RandomSource;
