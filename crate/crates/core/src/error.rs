use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("groebner step budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("certificate check failed: {0}")]
    CertificateFailed(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("no decision branch applies to {0}")]
    Undecided(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
