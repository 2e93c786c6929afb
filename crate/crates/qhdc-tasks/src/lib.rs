//! Experiment pipelines on top of the HDC algebra and the quantum engine:
//! the currency analogy in classical and quantum form, and the hybrid
//! 3-versus-6 digit classification with cross-validation, a dimensionality
//! sweep and a circuit-resource scaling analysis.

pub mod classify;
pub mod dataset;
mod error;
pub mod metrics;
pub mod mnist;
pub mod reasoning;
pub mod resources;
pub mod sweep;
pub mod synthetic;

pub use classify::{
    cross_validate, encode_sample, infer, train, ClassifierModel, ClassifyConfig, ClassifyMode,
    EvalReport, Inference,
};
pub use dataset::{preprocess, preprocess_image, Dataset, DatasetSource, Image, Sample};
pub use error::TaskError;
pub use metrics::{auc_from_scores, confusion_totals, weighted_f1, ConfusionMatrix};
pub use mnist::load_mnist;
pub use reasoning::{
    reasoning_query_classical, reasoning_query_quantum, BundleMode, QuantumReasoningReport,
    ReasoningProblem, SimilarityTable, ENTITY_NAMES, SYMBOL_NAMES,
};
pub use resources::{flat_lcu_scaling_row, probabilistic_lcu_scaling_row, ScalingRow};
pub use sweep::{dimensionality_sweep, SweepConfig, SweepRow};
pub use synthetic::{synthetic_dataset, synthetic_dataset_with_noise, SyntheticNoise};
