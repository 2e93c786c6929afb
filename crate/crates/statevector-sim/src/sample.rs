//! Shot sampling from measurement distributions.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{SimError, Statevector};

/// Measurement counts over a qubit subset. Keys are bitstrings with the
/// highest-index measured qubit leftmost (qubits[0] is the rightmost char).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotResult {
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
}

impl ShotResult {
    pub fn count_of(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// Empirical probability of one outcome.
    pub fn frequency(&self, key: &str) -> f64 {
        self.count_of(key) as f64 / self.shots as f64
    }
}

impl Statevector {
    /// Draw `shots` independent samples of the listed qubits. With
    /// `readout_flip > 0` every recorded bit is flipped with that probability
    /// (a crude readout-noise knob; it consumes no randomness when zero, so
    /// `0.0` is bit-for-bit identical to noiseless sampling).
    pub fn sample(
        &self,
        qubits: &[usize],
        shots: u64,
        rng: &mut impl Rng,
        readout_flip: f64,
    ) -> Result<ShotResult, SimError> {
        if shots == 0 {
            return Err(SimError::invalid("shots must be >= 1"));
        }
        if !(0.0..=1.0).contains(&readout_flip) {
            return Err(SimError::invalid("flip probability must be in [0, 1]"));
        }
        let probs = self.marginal_probabilities(qubits);
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for p in &probs {
            acc += p;
            cumulative.push(acc);
        }
        let total = acc;

        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * total;
            let mut outcome = cumulative.partition_point(|&c| c <= u);
            if outcome >= probs.len() {
                outcome = probs.len() - 1;
            }
            if readout_flip > 0.0 {
                for b in 0..qubits.len() {
                    if rng.gen_bool(readout_flip) {
                        outcome ^= 1 << b;
                    }
                }
            }
            *counts.entry(bitstring(outcome, qubits.len())).or_insert(0) += 1;
        }
        Ok(ShotResult { counts, shots })
    }
}

fn bitstring(outcome: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if outcome >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}
