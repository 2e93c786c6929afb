//! Resource scaling of the class-prototype encoding circuit: the flat
//! LCU bundle of all sample-feature unitaries versus the probabilistic
//! single-ancilla variant. Counting only; these circuits are never
//! simulated.
//!
//! Each SELECT term is costed as a generic multi-controlled unitary (the
//! two-level route), matching how a transpiler treats an unstructured
//! controlled operator; that is what drives the exponential depth growth.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use hdc_core::rng::{self, domain};
use qhdc_ops::PhaseOracle;
use qhdc_synth::{
    circuit_unitary, controlled_unitary_cost, report_from_tally, state_prep_tree, BlockCost,
    CoreCache, GateSink, ResourceReport, Tally,
};
use statevector_sim::Gate;

use crate::classify::level_codebook;
use crate::dataset::N_FEATURES;
use crate::TaskError;

/// Depth above which a circuit is flagged unrealizable on near-term
/// hardware.
pub const INFEASIBLE_DEPTH: u64 = 1_000_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n_qubits: usize,
    pub mode: String,
    pub samples: usize,
    pub k_terms: usize,
    pub ancillas: usize,
    pub rounds: u32,
    pub depth: u64,
    pub cnot_count: u64,
    pub total_gates: u64,
    pub infeasible: bool,
}

impl ScalingRow {
    fn from_report(
        report: ResourceReport,
        mode: &str,
        samples: usize,
        k_terms: usize,
        rounds: u32,
    ) -> Self {
        Self {
            n_qubits: report.n_system,
            mode: mode.to_string(),
            samples,
            k_terms,
            ancillas: report.n_ancilla,
            rounds,
            depth: report.depth,
            cnot_count: report.cnot_count,
            total_gates: report.total_gates,
            infeasible: report.depth > INFEASIBLE_DEPTH,
        }
    }
}

/// The 32 distinct feature unitaries (two level vectors, sixteen positions)
/// at dimensionality 2^n, with their term costs under `anc` controls.
fn distinct_term_costs(
    n: usize,
    anc: usize,
    seed: u64,
    cache: &mut CoreCache,
) -> Result<HashMap<(u8, usize), BlockCost>, TaskError> {
    let levels = level_codebook(1 << n, seed)?;
    let mut costs = HashMap::new();
    for (bit, level) in levels.iter().enumerate() {
        let oracle = PhaseOracle::from_bipolar(level)?;
        for position in 0..N_FEATURES {
            let prep = qhdc_ops::StatePrep::from_oracle(&oracle)?
                .permuted(position as i64)?;
            let matrix = circuit_unitary(prep.circuit())?;
            let tally = controlled_unitary_cost(&matrix, anc, cache)?;
            costs.insert((bit as u8, position), BlockCost::from(tally));
        }
    }
    Ok(costs)
}

/// Seeded per-term pixel bits standing in for one class's training features.
fn term_bits(samples: usize, seed: u64) -> Vec<[u8; N_FEATURES]> {
    (0..samples)
        .map(|s| {
            let mut stream = rng::stream(seed, domain::LCU, s as u64);
            let mut bits = [0u8; N_FEATURES];
            for b in bits.iter_mut() {
                *b = u8::from(stream.gen_bool(0.5));
            }
            bits
        })
        .collect()
}

/// Flat LCU class-prototype encoding: PREP over ceil(log2(16 M)) ancillas,
/// one multi-controlled feature unitary per (sample, pixel) term, PREP back.
pub fn flat_lcu_scaling_row(
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ScalingRow, TaskError> {
    if n == 0 || samples == 0 {
        return Err(TaskError::invalid("need n >= 1 and samples >= 1"));
    }
    let k_terms = samples * N_FEATURES;
    let m = (k_terms as f64).log2().ceil() as usize;
    let total = n + m;
    let mut cache = CoreCache::new();
    let costs = distinct_term_costs(n, m, seed, &mut cache)?;
    let bits = term_bits(samples, seed);

    let mut tally = Tally::new(total);
    let anc_wires: Vec<usize> = (n..total).collect();
    let mut weights = vec![0.0; 1 << m];
    for w in weights.iter_mut().take(k_terms) {
        *w = (1.0 / k_terms as f64).sqrt();
    }
    state_prep_tree(&weights, &anc_wires, &mut tally)?;

    let identity_map: Vec<usize> = (0..total).collect();
    for (s, features) in bits.iter().enumerate() {
        for (p, &bit) in features.iter().enumerate() {
            let k = s * N_FEATURES + p;
            let zero_wires: Vec<usize> = (0..m)
                .filter(|b| k >> b & 1 == 0)
                .map(|b| n + b)
                .collect();
            for &w in &zero_wires {
                tally.gate(Gate::PauliX { qubit: w });
            }
            tally.append_cost(&costs[&(bit, p)], &identity_map);
            for &w in &zero_wires {
                tally.gate(Gate::PauliX { qubit: w });
            }
        }
    }
    state_prep_tree(&weights, &anc_wires, &mut tally)?;

    let report = report_from_tally(&tally, n, m);
    Ok(ScalingRow::from_report(report, "flat", samples, k_terms, 0))
}

/// Probabilistic LCU: per round one Hadamard on the single ancilla, one
/// drawn feature unitary controlled on it, and a closing Hadamard.
pub fn probabilistic_lcu_scaling_row(
    n: usize,
    samples: usize,
    rounds: u32,
    seed: u64,
) -> Result<ScalingRow, TaskError> {
    if n == 0 || rounds == 0 {
        return Err(TaskError::invalid("need n >= 1 and rounds >= 1"));
    }
    let k_terms = samples * N_FEATURES;
    let total = n + 1;
    let ancilla = n;
    let mut cache = CoreCache::new();
    let costs = distinct_term_costs(n, 1, seed, &mut cache)?;
    let bits = term_bits(samples, seed);

    let mut tally = Tally::new(total);
    let identity_map: Vec<usize> = (0..total).collect();
    let mut draw = rng::stream(seed, domain::LCU, u64::MAX);
    for _ in 0..rounds {
        let term: usize = draw.gen_range(0..k_terms);
        let (s, p) = (term / N_FEATURES, term % N_FEATURES);
        let bit = bits[s][p];
        tally.gate(Gate::Hadamard { qubit: ancilla });
        tally.append_cost(&costs[&(bit, p)], &identity_map);
        tally.gate(Gate::Hadamard { qubit: ancilla });
    }

    let report = report_from_tally(&tally, n, 1);
    Ok(ScalingRow::from_report(report, "probabilistic", samples, k_terms, rounds))
}

/// CSV rendering for scaling rows.
pub fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut out = String::from(
        "n_qubits,mode,samples,k_terms,ancillas,rounds,depth,cnot_count,total_gates,infeasible\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.n_qubits,
            r.mode,
            r.samples,
            r.k_terms,
            r.ancillas,
            r.rounds,
            r.depth,
            r.cnot_count,
            r.total_gates,
            r.infeasible
        ));
    }
    out
}
