//! The 3-versus-6 classifier: positional MAP encoding, prototype training
//! with optional retraining, classical / quantum-exact / quantum-sampled
//! inference and stratified cross-validation.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hdc_core::rng::{self, domain, ChaCha8Rng};
use hdc_core::{cosine, BipolarHypervector, BundleVector, PrototypeSet};
use qhdc_ops::{
    hadamard_test, hadamard_test_sampled, PhaseOracle, SimilarityEstimate, StatePrep,
};

use crate::dataset::{Sample, CLASS_LABELS, N_FEATURES};
use crate::metrics::{auc_from_scores, weighted_f1, ConfusionMatrix};
use crate::TaskError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifyMode {
    Classical,
    QuantumExact,
    QuantumSampled,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub dim: usize,
    pub seed: u64,
    pub mode: ClassifyMode,
    /// Retraining passes over the training set; stops early at zero misses.
    /// The hybrid pipeline defaults to zero.
    pub retrain_epochs: u32,
    pub folds: usize,
    pub train_size: usize,
    pub test_size: usize,
    /// Shots per Hadamard test in sampled mode.
    pub shots: u64,
}

impl ClassifyConfig {
    pub fn new(dim: usize, seed: u64, mode: ClassifyMode) -> Self {
        Self {
            dim,
            seed,
            mode,
            retrain_epochs: if mode == ClassifyMode::Classical { 10 } else { 0 },
            folds: 5,
            train_size: 100,
            test_size: 50,
            shots: 10_000,
        }
    }

    fn requires_power_of_two(&self) -> bool {
        self.mode != ClassifyMode::Classical
    }
}

/// The trained model: level codebook, integer prototypes and (hybrid mode)
/// the RMS-encoded prototype oracles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifierModel {
    pub dim: usize,
    pub n_qubits: Option<usize>,
    pub level_codebook: Vec<BipolarHypervector>,
    pub prototypes: PrototypeSet,
    pub rms_oracles: Option<Vec<PhaseOracle>>,
    pub retrain_epochs: u32,
    pub seed: u64,
}

/// Level vectors for pixel values 0 and 1, derived from the run seed.
pub fn level_codebook(dim: usize, seed: u64) -> Result<Vec<BipolarHypervector>, TaskError> {
    (0..2u64)
        .map(|level| {
            let mut stream = rng::stream(seed, domain::SYMBOL, level);
            Ok(BipolarHypervector::random(dim, &mut stream)?)
        })
        .collect()
}

/// Positional MAP encoding: the level vector of each pixel value, cyclically
/// shifted by the pixel index, summed without thresholding.
pub fn encode_sample(
    features: &[u8; N_FEATURES],
    levels: &[BipolarHypervector],
) -> Result<BundleVector, TaskError> {
    let mut acc = BundleVector::zeros(levels[0].dim());
    for (position, &bit) in features.iter().enumerate() {
        let shifted = levels[bit as usize].permute(position as i64);
        acc.add_assign(&shifted.to_bundle())?;
    }
    Ok(acc)
}

/// Train prototypes by bundling all sample encodings per class, then run the
/// configured retraining passes. Hybrid modes additionally RMS-encode the
/// prototypes into phase oracles.
pub fn train(samples: &[Sample], config: &ClassifyConfig) -> Result<ClassifierModel, TaskError> {
    if config.requires_power_of_two() && !config.dim.is_power_of_two() {
        return Err(TaskError::invalid(format!(
            "quantum modes need a power-of-two dimension, got {}",
            config.dim
        )));
    }
    for label in CLASS_LABELS {
        if !samples.iter().any(|s| s.label == label) {
            return Err(TaskError::invalid(format!(
                "training set is missing class {label}"
            )));
        }
    }
    let levels = level_codebook(config.dim, config.seed)?;
    let mut sums = vec![BundleVector::zeros(config.dim); CLASS_LABELS.len()];
    let mut encoded = Vec::with_capacity(samples.len());
    for sample in samples {
        let enc = encode_sample(&sample.features, &levels)?;
        let class_index = usize::from(sample.label == 6);
        sums[class_index].add_assign(&enc)?;
        encoded.push((enc, sample.label as u32));
    }
    let mut prototypes = PrototypeSet::new(CLASS_LABELS.map(u32::from).to_vec(), sums)?;

    for _ in 0..config.retrain_epochs {
        if prototypes.retrain_epoch(&encoded)? == 0 {
            break;
        }
    }

    let rms_oracles = if config.mode == ClassifyMode::Classical {
        None
    } else {
        let oracles = prototypes
            .vectors()
            .iter()
            .map(|proto| {
                if proto.is_zero() {
                    Err(TaskError::Degenerate("all-zero class prototype".into()))
                } else {
                    Ok(PhaseOracle::rms_from_bundle(proto)?)
                }
            })
            .collect::<Result<Vec<_>, TaskError>>()?;
        Some(oracles)
    };

    Ok(ClassifierModel {
        dim: config.dim,
        n_qubits: config
            .dim
            .is_power_of_two()
            .then(|| config.dim.trailing_zeros() as usize),
        level_codebook: levels,
        prototypes,
        rms_oracles,
        retrain_epochs: config.retrain_epochs,
        seed: config.seed,
    })
}

/// One inference outcome: the winning label and the class-3-minus-class-6
/// similarity gap used as the ROC score.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Inference {
    pub label: u8,
    pub score: f64,
    pub similarities: Vec<f64>,
    pub estimates: Option<Vec<SimilarityEstimate>>,
}

pub fn infer(
    model: &ClassifierModel,
    features: &[u8; N_FEATURES],
    mode: ClassifyMode,
    shots: u64,
    shot_rng: &mut ChaCha8Rng,
) -> Result<Inference, TaskError> {
    let query = encode_sample(features, &model.level_codebook)?;
    if query.is_zero() {
        return Err(TaskError::Degenerate("all-zero query encoding".into()));
    }
    let (similarities, estimates) = match mode {
        ClassifyMode::Classical => {
            let sims = model
                .prototypes
                .vectors()
                .iter()
                .map(|proto| Ok(cosine(&query, proto)?))
                .collect::<Result<Vec<_>, TaskError>>()?;
            (sims, None)
        }
        ClassifyMode::QuantumExact | ClassifyMode::QuantumSampled => {
            let oracles = model
                .rms_oracles
                .as_ref()
                .ok_or_else(|| TaskError::invalid("model has no RMS oracles"))?;
            let query_prep = StatePrep::from_oracle(&PhaseOracle::rms_from_bundle(&query)?)?;
            let mut sims = Vec::with_capacity(oracles.len());
            let mut ests = Vec::with_capacity(oracles.len());
            for oracle in oracles {
                let proto_prep = StatePrep::from_oracle(oracle)?;
                let est = if mode == ClassifyMode::QuantumExact {
                    hadamard_test(&query_prep, &proto_prep)?
                } else {
                    hadamard_test_sampled(&query_prep, &proto_prep, shots, shot_rng)?
                };
                sims.push(est.value);
                ests.push(est);
            }
            (sims, Some(ests))
        }
    };
    // Highest similarity wins; ties go to the lower label (class 3).
    let label = if similarities[0] >= similarities[1] {
        CLASS_LABELS[0]
    } else {
        CLASS_LABELS[1]
    };
    Ok(Inference {
        label,
        score: similarities[0] - similarities[1],
        similarities,
        estimates,
    })
}

/// Cross-validation report. Determinism contract: everything except the
/// wall-time fields is bit-identical for a fixed config and seed in
/// classical and quantum-exact modes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub mode: ClassifyMode,
    pub dim: usize,
    pub seed: u64,
    pub folds: usize,
    pub confusion: ConfusionMatrix,
    pub f1_mean: f64,
    pub f1_std: f64,
    pub per_fold_f1: Vec<f64>,
    pub auc: f64,
    pub per_fold_seconds: Vec<f64>,
    pub max_std_error: f64,
}

/// Build stratified test folds as index sets: `folds * test_size / 2`
/// samples per class, each serving as test exactly once. Training draws per
/// fold come from the rest of the pool.
fn stratified_fold_chunks(
    pool: &[Sample],
    config: &ClassifyConfig,
) -> Result<Vec<Vec<usize>>, TaskError> {
    let per_fold_class = config.test_size / 2;
    if per_fold_class == 0 {
        return Err(TaskError::invalid("test_size must be at least 2"));
    }
    let needed_per_class = config.folds * per_fold_class + config.train_size / 2;
    let mut chunks = vec![Vec::with_capacity(config.test_size); config.folds];
    for (class_index, label) in CLASS_LABELS.iter().enumerate() {
        let mut members: Vec<usize> = (0..pool.len())
            .filter(|&i| pool[i].label == *label)
            .collect();
        if members.len() < needed_per_class {
            return Err(TaskError::invalid(format!(
                "class {label} has {} samples, need {needed_per_class} for {} folds of {}/{} train/test",
                members.len(),
                config.folds,
                config.train_size,
                config.test_size
            )));
        }
        let mut shuffle_rng = rng::stream(config.seed, domain::SHUFFLE, class_index as u64);
        members.shuffle(&mut shuffle_rng);
        for fold in 0..config.folds {
            for i in 0..per_fold_class {
                chunks[fold].push(members[fold * per_fold_class + i]);
            }
        }
    }
    Ok(chunks)
}

struct FoldOutcome {
    confusion: ConfusionMatrix,
    f1: f64,
    scored: Vec<(f64, bool)>,
    seconds: f64,
    max_std_error: f64,
}

fn run_fold(
    fold: usize,
    pool: &[Sample],
    chunks: &[Vec<usize>],
    config: &ClassifyConfig,
) -> Result<FoldOutcome, TaskError> {
    let start = std::time::Instant::now();
    let test: Vec<Sample> = chunks[fold].iter().map(|&i| pool[i]).collect();
    // Stratified training draw from everything outside the held-out fold.
    let held_out: std::collections::HashSet<usize> = chunks[fold].iter().copied().collect();
    let mut candidates: Vec<usize> =
        (0..pool.len()).filter(|i| !held_out.contains(i)).collect();
    let mut fold_rng = rng::stream(config.seed, domain::FOLD, fold as u64);
    candidates.shuffle(&mut fold_rng);
    let per_class = config.train_size / 2;
    let mut train_set = Vec::with_capacity(config.train_size);
    for label in CLASS_LABELS {
        let take: Vec<Sample> = candidates
            .iter()
            .map(|&i| pool[i])
            .filter(|s| s.label == label)
            .take(per_class)
            .collect();
        if take.len() < per_class {
            return Err(TaskError::invalid(format!(
                "not enough class-{label} samples to draw {per_class} per fold"
            )));
        }
        train_set.extend(take);
    }

    let model = train(&train_set, config)?;
    let mut confusion = ConfusionMatrix::default();
    let mut scored = Vec::with_capacity(test.len());
    let mut max_std_error = 0.0f64;
    for (i, sample) in test.iter().enumerate() {
        let mut shot_rng = rng::stream(
            config.seed,
            domain::SHOTS,
            (fold * 1_000_000 + i) as u64,
        );
        let inference = infer(&model, &sample.features, config.mode, config.shots, &mut shot_rng)?;
        confusion.record(sample.label, inference.label);
        scored.push((inference.score, sample.label == CLASS_LABELS[0]));
        if let Some(ests) = &inference.estimates {
            for e in ests {
                max_std_error = max_std_error.max(e.std_error);
            }
        }
    }
    Ok(FoldOutcome {
        confusion,
        f1: weighted_f1(&confusion),
        scored,
        seconds: start.elapsed().as_secs_f64(),
        max_std_error,
    })
}

/// Stratified k-fold cross-validation over the preprocessed pool; folds run
/// in parallel with per-fold derived seeds, so parallel and serial runs
/// agree.
pub fn cross_validate(pool: &[Sample], config: &ClassifyConfig) -> Result<EvalReport, TaskError> {
    if config.folds < 2 {
        return Err(TaskError::invalid("cross-validation needs >= 2 folds"));
    }
    let chunks = stratified_fold_chunks(pool, config)?;
    let outcomes: Vec<FoldOutcome> = (0..config.folds)
        .into_par_iter()
        .map(|fold| run_fold(fold, pool, &chunks, config))
        .collect::<Result<Vec<_>, TaskError>>()?;

    let mut confusion = ConfusionMatrix::default();
    let mut scored = Vec::new();
    let mut per_fold_f1 = Vec::with_capacity(config.folds);
    let mut per_fold_seconds = Vec::with_capacity(config.folds);
    let mut max_std_error = 0.0f64;
    for o in &outcomes {
        confusion.merge(&o.confusion);
        scored.extend_from_slice(&o.scored);
        per_fold_f1.push(o.f1);
        per_fold_seconds.push(o.seconds);
        max_std_error = max_std_error.max(o.max_std_error);
    }
    let f1_mean = per_fold_f1.iter().sum::<f64>() / config.folds as f64;
    let f1_var = per_fold_f1
        .iter()
        .map(|f| (f - f1_mean).powi(2))
        .sum::<f64>()
        / config.folds as f64;
    Ok(EvalReport {
        mode: config.mode,
        dim: config.dim,
        seed: config.seed,
        folds: config.folds,
        confusion,
        f1_mean,
        f1_std: f1_var.sqrt(),
        per_fold_f1,
        auc: auc_from_scores(&scored),
        per_fold_seconds,
        max_std_error,
    })
}
