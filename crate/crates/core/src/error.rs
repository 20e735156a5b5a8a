//! Crate-wide error type.

/// Errors produced by construction, oracles, schedules, and the solver.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Construction rejects NaN/Inf instead of propagating them.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("step schedule exhausted: k = {k} exceeds horizon {horizon}")]
    ScheduleExhausted { k: usize, horizon: usize },

    /// Solver abort naming the iteration and the offending oracle.
    #[error("non-finite {oracle} at iteration {k}")]
    NonFiniteIterate { k: usize, oracle: String },

    #[error("symmetric eigendecomposition did not converge after {0} sweeps")]
    EigenFailure(usize),

    #[error("total averaging weight is zero")]
    ZeroWeight,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
