use thiserror::Error;

/// Errors raised by the classical HDC algebra.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum HdcError {
    #[error("invalid dimension {0}: hypervectors need at least 2 components")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation requires a non-empty input list")]
    EmptyInput,
    #[error("similarity is undefined for a zero-norm vector")]
    UndefinedSimilarity,
    #[error("degenerate all-zero vector")]
    DegenerateVector,
}
