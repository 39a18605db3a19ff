use thiserror::Error;

/// Failure while parsing a ring, element, ideal or module expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {message} (expected one of: {})", expected.join(", "))]
pub struct ParseError {
    pub pos: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, expected: &[&str], message: impl Into<String>) -> Self {
        ParseError {
            pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: size {size} exceeds guard {limit}")]
    GuardExceeded { what: String, size: String, limit: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("polynomial quotient nesting depth {0} exceeds 2")]
    DepthExceeded(usize),
    #[error("operation requires a finite ring: {0}")]
    NotFinite(String),
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("subset is not closed under specialization: {0}")]
    NotSpecializationClosed(String),
    #[error("generators do not generate the ideal: {0}")]
    GeneratorsDontGenerate(String),
    #[error("element is not idempotent: {0}")]
    NotIdempotent(String),
    #[error("no essential embedding found: {0}")]
    EmbeddingSearchFailed(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &str, size: impl ToString, limit: u64) -> Error {
    Error::GuardExceeded { what: what.to_string(), size: size.to_string(), limit }
}
