//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagkError {
    #[error("dimension mismatch: {0} vs {1} variables")]
    Dimension(usize, usize),
    #[error("index {index} out of range 1..={max}")]
    IndexRange { index: i64, max: i64 },
    #[error("division is not exact: {0}")]
    Divisibility(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("composition mismatch: {0}")]
    Composition(String),
    #[error("capability limit: {0}")]
    Capability(String),
    #[error("not symmetric: {0}")]
    Symmetry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FlagkError>;

pub(crate) fn check_index(index: i64, max: i64) -> Result<()> {
    if index < 1 || index > max {
        Err(FlagkError::IndexRange { index, max })
    } else {
        Ok(())
    }
}
