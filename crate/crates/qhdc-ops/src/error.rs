use thiserror::Error;

#[derive(Debug, Error)]
pub enum QhdcError {
    #[error("dimension {0} is not a power of two")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bundle cancels to the zero state (success amplitude ~ 0)")]
    Cancellation,
    #[error("degenerate all-zero vector has no RMS phase encoding")]
    DegenerateVector,
    #[error(transparent)]
    Sim(#[from] statevector_sim::SimError),
    #[error(transparent)]
    Hdc(#[from] hdc_core::HdcError),
}

impl QhdcError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        QhdcError::InvalidArgument(msg.into())
    }
}
