use thiserror::Error;

/// Errors raised by the engine.
///
/// Resource errors are kept distinct from mathematical failures: a computation
/// that ran out of budget says nothing about the statement being checked.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },

    #[error("point {point} outside domain of size {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: u128 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub fn resource(what: impl Into<String>, limit: impl TryInto<u128>) -> Self {
        Error::Resource {
            what: what.into(),
            limit: limit.try_into().unwrap_or(u128::MAX),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
