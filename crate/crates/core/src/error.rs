//! Crate-wide error type. Exhaustive searches fail loudly when a budget is
//! exhausted instead of silently truncating.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{operation}: enumeration budget of {limit} nodes exceeded")]
    BudgetExceeded { operation: &'static str, limit: u64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("walk is not incidence-valid: {0}")]
    InvalidWalk(String),

    #[error("balanced family violates the theta property")]
    ThetaViolated,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("labeling recovery failed: {0}")]
    Recover(#[from] RecoverFailure),

    #[error("ground set of size {size} exceeds the cap of {max}")]
    GroundTooLarge { size: usize, max: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Unsupported(String),
}

/// Why a group labeling could not be recovered from a biased graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecoverFailure {
    #[error("graph has {got} vertices; at least {need} are required")]
    TooFewVertices { got: usize, need: usize },

    #[error("vertex pair ({u},{v}) carries {got} parallel edges, expected {expected}")]
    ParallelCount { u: usize, v: usize, got: usize, expected: usize },

    #[error("balanced family contains a cycle of size {size} < 3")]
    SmallBalancedCycle { size: usize },

    #[error("triangle-completion condition fails at vertices ({b1},{b2},{b3})")]
    StarCondition { b1: usize, b2: usize, b3: usize },

    #[error("recovered operation is not associative (input bias is not group-labelable)")]
    Associativity,

    #[error("recovered labeling does not reproduce the input balanced family")]
    BiasMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
