use thiserror::Error;

/// Every failure the library reports. Variants that name a mathematical identity
/// (`NonExactDivision`, `NonIntegralResult`, `RouteMismatch`, `NotStabilized`) signal
/// that a proven statement failed to hold on concrete data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division is not exact: {0}")]
    NonExactDivision(String),
    #[error("variable set mismatch: {0}")]
    ArityMismatch(String),
    #[error("element is not a unit modulo the prime: {0}")]
    NotAUnit(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("precision exceeded: {0}")]
    PrecisionExceeded(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("interpolated coefficient is not in A: {0}")]
    NonIntegralResult(String),
    #[error("construction routes disagree: {0}")]
    RouteMismatch(String),
    #[error("sequence did not stabilise: {0}")]
    NotStabilized(String),
    #[error("precondition not met: {0}")]
    PreconditionUnmet(String),
    #[error("cache conflict: {0}")]
    CacheConflict(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
