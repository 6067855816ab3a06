use thiserror::Error;

/// Failures raised while parsing expressions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("unknown symbol `{name}` at position {position}")]
    UnknownSymbol { name: String, position: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

/// Crate-wide error type. Every oracle or recipe failure maps onto exactly one
/// variant.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not in domain: {0}")]
    NotInDomain(String),
    #[error("degree {degree} exceeds moment table cap {cap}")]
    DegreeExceeded { degree: usize, cap: usize },
    #[error("not positive: {0}")]
    NotPositive(String),
    #[error("not selfadjoint: {0}")]
    NotSelfadjoint(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("complex eigenvalues: {0}")]
    ComplexEigenvalues(String),
    #[error("insufficient entries: need {needed}, have {available}")]
    InsufficientEntries { needed: usize, available: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
