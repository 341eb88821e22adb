use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A dense or exhaustive computation was refused because the instance is too large.
    #[error("{what}: size {size} exceeds guard {limit}{hint}")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("rejection sampling gave up after {attempts} attempts: {what}")]
    RetryBudgetExhausted { what: &'static str, attempts: usize },

    #[error("eigen-iteration did not converge (residual {residual:.3e})")]
    NotConverged { residual: f64 },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
