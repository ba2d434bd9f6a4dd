use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parties derived different keys")]
    KeyDisagreement,

    #[error("intercepted matrix is not a power's first component within {levels} doublings")]
    NotOnChain { levels: u32 },

    #[error("chain violation: {0}")]
    ChainViolation(String),

    #[error("binary search exhausted without a matching exponent")]
    NoMatchingExponent,

    #[error("attack failed: {0}")]
    AttackFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable category, used by the command-line front end.
    pub fn category(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } | Error::InvalidInput(_) => "input",
            Error::KeyDisagreement => "protocol",
            Error::NotOnChain { .. }
            | Error::ChainViolation(_)
            | Error::NoMatchingExponent
            | Error::AttackFailed(_) => "attack",
            Error::Io(_) => "io",
            Error::Json(_) => "format",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidInput(msg.into())
    }
}
