use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid grading group: {0}")]
    InvalidGroup(String),
    #[error("grading group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("support bound violated: {0}")]
    SupportBound(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
