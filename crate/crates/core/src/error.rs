use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structurally malformed input (bad edge, duplicate edge, label out of range).
    #[error("invalid structure: {0}")]
    Validation(String),

    /// Well-formed input outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Request exceeds a configured size ceiling.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computation produced something a theorem rules out; always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use domain;
