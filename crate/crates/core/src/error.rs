use thiserror::Error;

/// Errors produced by diagram construction, group arithmetic and the
/// enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A matrix entry left the range of the storage integer.
    #[error("integer overflow: {0}")]
    Overflow(String),

    /// A configured budget (states, entries, results) was exhausted.
    #[error("resource limit exceeded: {what} (limit {limit}, reached {reached})")]
    Resource {
        what: String,
        limit: usize,
        reached: usize,
    },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
