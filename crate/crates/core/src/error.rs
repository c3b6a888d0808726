use thiserror::Error;

/// Errors raised by constructions. Verification outcomes are not errors; they
/// are reported through [`crate::Certificate`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cap mismatch: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("truncation unsound: {0}")]
    TruncationUnsound(String),
    #[error("insufficient cap: need {need}, have {have} ({what})")]
    InsufficientCap {
        need: usize,
        have: usize,
        what: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("structural defect: {0}")]
    Structural(String),
    #[error("not a category: {0}")]
    NotACategory(String),
    #[error("not functorial: {0}")]
    NotFunctorial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
