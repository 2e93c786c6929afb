//! Quantum realizations of the MAP algebra on the statevector engine.
//!
//! A bipolar hypervector lives in the phases of a uniform superposition:
//! state preparation is a Hadamard layer followed by one diagonal phase
//! oracle. Binding composes oracles, permutation is a QFT / phase / inverse
//! QFT sandwich, bundling is a linear combination of unitaries amplified by
//! oblivious amplitude amplification, and similarity is a Hadamard test.

mod error;
mod lcu;
mod oracle;
mod prep;
mod problcu;
mod similarity;

pub use error::QhdcError;
pub use lcu::{
    estimate_rounds, lcu_prepare, oaa_amplify, oaa_amplify_with_fault, reference_bundle,
    bundle_states, BundleDiagnostics, BundleOutput, Fault, LcuBundlePlan, OaaConfig,
};
pub use oracle::PhaseOracle;
pub use prep::{complete_to_unitary, StatePrep};
pub use problcu::{probabilistic_lcu, ProbabilisticLcuRun, ProbabilisticLcuStats};
pub use similarity::{
    hadamard_test, hadamard_test_circuit, hadamard_test_sampled, SimilarityEstimate,
    SimilarityMode,
};
