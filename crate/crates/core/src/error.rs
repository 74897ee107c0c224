//! Error taxonomy shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a prime power: {0}")]
    NotPrimePower(u64),
    #[error("out of range: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("outside supported scope: {0}")]
    Scope(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 3 for size guards, 4 for failed
    /// verifications, 2 for everything else (validation, domain, i/o).
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::SizeGuard(_) => 3,
            Error::Verification(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
