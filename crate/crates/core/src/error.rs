use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Structural errors come from inconsistent input data, domain errors from
/// inputs outside an operation's precondition.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("wrong backend: {0}")]
    WrongBackend(String),

    #[error("invariance violation: {0}")]
    Invariance(String),

    #[error("coverage error: {message}")]
    Coverage { message: String, witness: Vec<String> },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("length mismatch: {0} angles for {1} arc sets")]
    LengthMismatch(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
