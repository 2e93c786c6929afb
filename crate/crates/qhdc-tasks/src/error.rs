use thiserror::Error;

#[derive(Debug, Error)]
pub enum TaskError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("format error in {path} at byte {offset}: {message}")]
    Format {
        path: String,
        offset: u64,
        message: String,
    },
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Hdc(#[from] hdc_core::HdcError),
    #[error(transparent)]
    Qhdc(#[from] qhdc_ops::QhdcError),
    #[error(transparent)]
    Synth(#[from] qhdc_synth::SynthError),
    #[error(transparent)]
    Sim(#[from] statevector_sim::SimError),
}

impl TaskError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        TaskError::InvalidArgument(msg.into())
    }
}
