use crate::cycles::{CycleWitness, PathWitness};

/// Crate-wide error type.
///
/// The search-budget variants carry the best witness found before the budget
/// ran out, so callers can diagnose "how far did it get" instead of silently
/// receiving a wrong answer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph order {n} out of range 1..=64")]
    OrderOutOfRange { n: usize },

    #[error("vertex {v} out of range for graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("vertex sets must be disjoint")]
    SetsOverlap,

    #[error("combined order {total} exceeds 64 vertices")]
    SizeOverflow { total: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("no private neighbors to move across {u}-{v}")]
    EmptyPrivateSet { u: usize, v: usize },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: u64, residual: f64 },

    #[error("path search exceeded budget of {budget} expansions")]
    PathBudgetExceeded {
        budget: u64,
        /// Longest path seen before the search was cut off.
        best: Option<Box<PathWitness>>,
    },

    #[error("cycle search exceeded budget of {budget} expansions")]
    CycleBudgetExceeded {
        budget: u64,
        /// Longest cycle seen before the search was cut off.
        best: Option<Box<CycleWitness>>,
    },

    #[error("graph6: {msg}")]
    Graph6 { msg: String },

    #[error("labeled enumeration capped at 8 vertices ({n} requested); n=8 needs the explicit override")]
    EnumerationCap { n: usize },

    #[error("{msg}")]
    Domain { msg: String },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain { msg: msg.into() }
    }

    pub fn graph6(msg: impl Into<String>) -> Self {
        Error::Graph6 { msg: msg.into() }
    }

    /// True for the budget-exhaustion variants (process exit code 3).
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::PathBudgetExceeded { .. } | Error::CycleBudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
