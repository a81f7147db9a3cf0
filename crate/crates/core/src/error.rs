use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An exact division left a remainder. Never expected; indicates an arithmetic bug.
    #[error("integrity error: {numerator} is not divisible by {denominator}")]
    InexactDivision {
        numerator: String,
        denominator: String,
    },

    /// 1-based position of the offending character or field.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// A certified construction produced something outside its target set.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("network error: {0}")]
    Network(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
