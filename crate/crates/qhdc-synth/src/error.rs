use thiserror::Error;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("gate kind not lowerable: {0}")]
    NotLowerable(String),
    #[error(transparent)]
    Sim(#[from] statevector_sim::SimError),
}

impl SynthError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        SynthError::InvalidArgument(msg.into())
    }
}
