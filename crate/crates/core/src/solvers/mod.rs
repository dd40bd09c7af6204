//! Exact exponential-time oracles used to check every construction.

pub(crate) mod bitgraph;
pub mod certificate;
pub mod linked;
pub mod minor;
pub mod model;
pub mod pathwidth;
pub mod treewidth;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has {n} vertices; this solver handles at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("time budget exhausted")]
    BudgetExceeded,
}
