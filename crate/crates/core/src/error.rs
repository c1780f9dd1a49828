use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HkqError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("no closed form for n={n}, p={p}: {reason}")]
    ValidityGate { n: u32, p: u64, reason: String },
    #[error("resource ceiling: {0}")]
    ResourceCeiling(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, HkqError>;
