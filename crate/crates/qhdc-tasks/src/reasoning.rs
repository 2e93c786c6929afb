//! The currency analogy: "what is the dollar of Mexico?".
//!
//! Two composite concepts are built by binding role/filler pairs and
//! bundling them; binding the query against both composites isolates the
//! role relation and points at the answer entity.

use hdc_core::{bind, cosine, rng, BipolarHypervector, BundleVector, Codebook};
use qhdc_ops::{
    bundle_states, hadamard_test, hadamard_test_sampled, BundleDiagnostics, OaaConfig,
    PhaseOracle, SimilarityEstimate, StatePrep,
};
use serde::{Deserialize, Serialize};

use crate::TaskError;

/// Canonical symbol order; fixed so every seed regenerates the same space.
pub const SYMBOL_NAMES: [&str; 9] = [
    "country",
    "currency",
    "capital",
    "USA",
    "Dollar",
    "WashingtonDC",
    "Mexico",
    "Peso",
    "MexicoCity",
];

/// The six candidate entities the query is compared against.
pub const ENTITY_NAMES: [&str; 6] = [
    "USA",
    "Dollar",
    "WashingtonDC",
    "Mexico",
    "Peso",
    "MexicoCity",
];

const USA_PAIRS: [(&str, &str); 3] = [
    ("country", "USA"),
    ("capital", "WashingtonDC"),
    ("currency", "Dollar"),
];
const MEXICO_PAIRS: [(&str, &str); 3] = [
    ("country", "Mexico"),
    ("capital", "MexicoCity"),
    ("currency", "Peso"),
];

#[derive(Debug, Clone)]
pub struct ReasoningProblem {
    codebook: Codebook,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleMode {
    /// Raw integer sums; matches the quantum amplitudes exactly.
    Raw,
    /// Sign-thresholded composites, as classical HDC libraries normalize.
    Sign,
}

/// Entity similarities in canonical entity order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityTable {
    pub entries: Vec<(String, f64)>,
}

impl SimilarityTable {
    pub fn argmax(&self) -> &str {
        self.entries
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(name, _)| name.as_str())
            .expect("non-empty table")
    }

    pub fn value_of(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantumReasoningReport {
    pub table: SimilarityTable,
    pub diagnostics: BundleDiagnostics,
    pub estimates: Vec<(String, SimilarityEstimate)>,
}

impl ReasoningProblem {
    pub fn new(dim: usize, seed: u64) -> Result<Self, TaskError> {
        let codebook = Codebook::generate(seed, dim, &SYMBOL_NAMES)?;
        Ok(Self { codebook })
    }

    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    pub fn dim(&self) -> usize {
        self.codebook.dim()
    }

    fn vector(&self, name: &str) -> &BipolarHypervector {
        self.codebook.get(name).expect("canonical symbol")
    }

    fn bound_pairs(&self, pairs: &[(&str, &str)]) -> Result<Vec<BipolarHypervector>, TaskError> {
        pairs
            .iter()
            .map(|(role, filler)| Ok(bind(self.vector(role), self.vector(filler))?))
            .collect()
    }

    /// The raw-integer query vector Dollar * V_USA * V_Mexico.
    pub fn raw_query(&self) -> Result<BundleVector, TaskError> {
        let usa_terms = self.bound_pairs(&USA_PAIRS)?;
        let mex_terms = self.bound_pairs(&MEXICO_PAIRS)?;
        let v_usa = hdc_core::bundle(&usa_terms.iter().collect::<Vec<_>>())?;
        let v_mex = hdc_core::bundle(&mex_terms.iter().collect::<Vec<_>>())?;
        let dollar = self.vector("Dollar");
        let components = (0..self.dim())
            .map(|i| {
                dollar.components()[i] as i64 * v_usa.components()[i] * v_mex.components()[i]
            })
            .collect();
        Ok(BundleVector::new(components))
    }
}

/// Classical baseline: similarities of the analogy query against all six
/// entities, in the selected bundling mode.
pub fn reasoning_query_classical(
    problem: &ReasoningProblem,
    mode: BundleMode,
) -> Result<SimilarityTable, TaskError> {
    let entries = match mode {
        BundleMode::Raw => {
            let query = problem.raw_query()?;
            ENTITY_NAMES
                .iter()
                .map(|name| Ok(((*name).to_string(), cosine(&query, problem.vector(name))?)))
                .collect::<Result<Vec<_>, TaskError>>()?
        }
        BundleMode::Sign => {
            let usa_terms = problem.bound_pairs(&USA_PAIRS)?;
            let mex_terms = problem.bound_pairs(&MEXICO_PAIRS)?;
            let v_usa =
                hdc_core::sign_normalize(&hdc_core::bundle(&usa_terms.iter().collect::<Vec<_>>())?);
            let v_mex =
                hdc_core::sign_normalize(&hdc_core::bundle(&mex_terms.iter().collect::<Vec<_>>())?);
            let query = bind(problem.vector("Dollar"), &bind(&v_usa, &v_mex)?)?;
            ENTITY_NAMES
                .iter()
                .map(|name| Ok(((*name).to_string(), cosine(&query, problem.vector(name))?)))
                .collect::<Result<Vec<_>, TaskError>>()?
        }
    };
    Ok(SimilarityTable { entries })
}

/// Quantum pipeline: compose the nine cross-term oracles (binding
/// distributes over bundling), bundle them with LCU+OAA, and compare against
/// each entity preparation with the Hadamard test. `shots` of `None` is the
/// exact mode.
pub fn reasoning_query_quantum(
    problem: &ReasoningProblem,
    shots: Option<(u64, u64)>,
) -> Result<QuantumReasoningReport, TaskError> {
    if !problem.dim().is_power_of_two() {
        return Err(TaskError::invalid(format!(
            "quantum reasoning needs a power-of-two dimension, got {}",
            problem.dim()
        )));
    }
    let dollar_oracle = PhaseOracle::from_bipolar(problem.vector("Dollar"))?;
    let mut term_preps = Vec::with_capacity(9);
    for (role_a, filler_a) in USA_PAIRS {
        let oa = PhaseOracle::from_bipolar(&bind(
            problem.vector(role_a),
            problem.vector(filler_a),
        )?)?;
        for (role_b, filler_b) in MEXICO_PAIRS {
            let ob = PhaseOracle::from_bipolar(&bind(
                problem.vector(role_b),
                problem.vector(filler_b),
            )?)?;
            let composed = PhaseOracle::compose(&[&dollar_oracle, &oa, &ob])?;
            term_preps.push(StatePrep::from_oracle(&composed)?);
        }
    }

    let bundle = bundle_states(term_preps, None, &OaaConfig::default())?;

    let mut entries = Vec::with_capacity(ENTITY_NAMES.len());
    let mut estimates = Vec::with_capacity(ENTITY_NAMES.len());
    for (i, name) in ENTITY_NAMES.iter().enumerate() {
        let entity_prep =
            StatePrep::from_oracle(&PhaseOracle::from_bipolar(problem.vector(name))?)?;
        let estimate = match shots {
            None => hadamard_test(&bundle.prep, &entity_prep)?,
            Some((s, shot_seed)) => {
                let mut shot_rng = rng::stream(shot_seed, rng::domain::SHOTS, i as u64);
                hadamard_test_sampled(&bundle.prep, &entity_prep, s, &mut shot_rng)?
            }
        };
        entries.push(((*name).to_string(), estimate.value));
        estimates.push(((*name).to_string(), estimate));
    }
    Ok(QuantumReasoningReport {
        table: SimilarityTable { entries },
        diagnostics: bundle.diagnostics,
        estimates,
    })
}
