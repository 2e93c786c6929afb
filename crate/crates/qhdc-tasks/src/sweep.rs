//! Dimensionality sweep: noise-free hybrid F1 against Hadamard-test circuit
//! depth on a single fixed split.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use hdc_core::rng::{self, domain};
use qhdc_ops::{hadamard_test_circuit, PhaseOracle, StatePrep};
use qhdc_synth::resources;

use crate::classify::{infer, train, ClassifyConfig, ClassifyMode};
use crate::dataset::{Sample, CLASS_LABELS};
use crate::metrics::{weighted_f1, ConfusionMatrix};
use crate::TaskError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub dims: Vec<usize>,
    pub seed: u64,
    pub train_size: usize,
    pub test_size: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { dims: vec![16, 32, 64, 128, 256], seed: 7, train_size: 100, test_size: 50 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub dim: usize,
    pub f1: f64,
    pub hadamard_test_depth: u64,
    pub hadamard_test_cnots: u64,
}

/// Run the sweep on one fixed stratified split (no cross-validation); every
/// dimension sees the same samples.
pub fn dimensionality_sweep(
    pool: &[Sample],
    config: &SweepConfig,
) -> Result<Vec<SweepRow>, TaskError> {
    let (train_set, test_set) = fixed_split(pool, config)?;
    let mut rows = Vec::with_capacity(config.dims.len());
    for &dim in &config.dims {
        let mut cfg = ClassifyConfig::new(dim, config.seed, ClassifyMode::QuantumExact);
        cfg.train_size = config.train_size;
        cfg.test_size = config.test_size;
        let model = train(&train_set, &cfg)?;

        let mut confusion = ConfusionMatrix::default();
        let mut shot_rng = rng::stream(config.seed, domain::SHOTS, dim as u64);
        for sample in &test_set {
            let inference =
                infer(&model, &sample.features, ClassifyMode::QuantumExact, 0, &mut shot_rng)?;
            confusion.record(sample.label, inference.label);
        }

        // Depth of one representative Hadamard test at this dimensionality:
        // an RMS-encoded query against an RMS-encoded prototype.
        let oracles = model.rms_oracles.as_ref().expect("hybrid model");
        let query = crate::classify::encode_sample(&test_set[0].features, &model.level_codebook)?;
        let query_prep = StatePrep::from_oracle(&PhaseOracle::rms_from_bundle(&query)?)?;
        let proto_prep = StatePrep::from_oracle(&oracles[0])?;
        let circuit = hadamard_test_circuit(&query_prep, &proto_prep)?;
        let report = resources(&circuit)?;

        rows.push(SweepRow {
            dim,
            f1: weighted_f1(&confusion),
            hadamard_test_depth: report.depth,
            hadamard_test_cnots: report.cnot_count,
        });
    }
    Ok(rows)
}

fn fixed_split(
    pool: &[Sample],
    config: &SweepConfig,
) -> Result<(Vec<Sample>, Vec<Sample>), TaskError> {
    let train_per_class = config.train_size / 2;
    let test_per_class = config.test_size / 2;
    let mut train_set = Vec::with_capacity(config.train_size);
    let mut test_set = Vec::with_capacity(config.test_size);
    for (class_index, label) in CLASS_LABELS.iter().enumerate() {
        let mut members: Vec<&Sample> = pool.iter().filter(|s| s.label == *label).collect();
        if members.len() < train_per_class + test_per_class {
            return Err(TaskError::invalid(format!(
                "class {label} has {} samples, need {}",
                members.len(),
                train_per_class + test_per_class
            )));
        }
        let mut shuffle_rng = rng::stream(config.seed, domain::SHUFFLE, 100 + class_index as u64);
        members.shuffle(&mut shuffle_rng);
        train_set.extend(members[..train_per_class].iter().map(|s| **s));
        test_set.extend(
            members[train_per_class..train_per_class + test_per_class]
                .iter()
                .map(|s| **s),
        );
    }
    Ok((train_set, test_set))
}

/// CSV rendering of sweep rows (dim, f1, depth, cnots).
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("dim,f1,hadamard_test_depth,hadamard_test_cnots\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.6},{},{}\n",
            r.dim, r.f1, r.hadamard_test_depth, r.hadamard_test_cnots
        ));
    }
    out
}
