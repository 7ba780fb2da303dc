use thiserror::Error;

/// Errors raised by the lattice engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A checked fixed-width operation would have wrapped.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// An input violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The configuration does not support the requested operation
    /// (e.g. fiber enumeration on a matrix that is not nonnegative and pointed).
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A configured iteration or memory cap was exceeded.
    #[error("resource limit exceeded: {what} (limit {limit}); {progress}")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        progress: String,
    },

    /// Malformed matrix text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Two independent computations disagreed.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
