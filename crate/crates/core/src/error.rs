use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Two vectors (or a vector and a domain) disagree on dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation was called in a way its contract forbids.
    #[error("usage error: {0}")]
    Usage(String),

    /// A dataset line could not be parsed.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// No closed-form subgradient norm bound exists for this
    /// objective/domain combination.
    #[error("G unavailable for {objective} on {domain}; supply G in config")]
    NormBoundUnavailable { objective: String, domain: String },

    /// A bound was requested with parameters outside its hypotheses.
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
