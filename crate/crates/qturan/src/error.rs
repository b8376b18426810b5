use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An operation would exceed a hard capacity of the implementation
    /// (vertex cap, enumeration cap, exhaustive-scan cap, ...).
    #[error("capacity exceeded for {what}: limit {limit}, got {got}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    /// Malformed argument that no capacity raise would fix.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// graph6 parse failure, with the byte offset of the offending input.
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    /// Eigensolver failed to reach the requested residual.
    #[error("eigensolver did not converge: best residual {residual:e} (budget {iterations} iterations)")]
    NonConvergence { residual: f64, iterations: usize },

    /// A documented precondition does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Value outside the mathematical domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// Enumeration ran out of its node-expansion budget.
    /// `marker` is the graph6 string of the last fully processed parent.
    #[error("enumeration budget exhausted after {expanded} expansions (at {marker})")]
    BudgetExhausted { expanded: u64, marker: String },

    /// Record store I/O or format problem.
    #[error("record store: {0}")]
    Store(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
