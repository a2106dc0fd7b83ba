use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {n} (expected 1..={})", n - 1)]
    IndexOutOfRange { index: usize, n: usize },
    #[error("unsupported ambient dimension {0}")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid Poisson structure: {0}")]
    InvalidStructure(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
