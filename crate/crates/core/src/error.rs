use thiserror::Error;

/// Errors raised by the library. Budget errors are always hard failures;
/// nothing is silently truncated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rank {rank} out of range for C({n},{k})")]
    RankOutOfRange { n: usize, k: usize, rank: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex has dimension {dim}, need at least {needed}")]
    DimensionTooSmall { dim: usize, needed: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{what} budget exceeded (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("coloring is not balanced: {0}")]
    NotBalanced(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
