use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size error: {0}")]
    Size(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget { what: String, needed: u128, limit: u128 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("code is not distance invariant (word {word} has a different distance profile)")]
    NotDistanceInvariant { word: usize },

    #[error("invalid ring axioms: {0}")]
    RingAxiom(String),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::Budget { what: what.into(), needed, limit }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
