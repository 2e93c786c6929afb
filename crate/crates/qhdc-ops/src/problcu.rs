//! Probabilistic LCU: a single-ancilla, round-based approximation of the
//! full prepare-select-unprepare construction.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statevector_sim::{Circuit, Gate, QubitRole, Statevector};

use crate::{QhdcError, StatePrep};

/// Outcome of a probabilistic LCU run.
#[derive(Debug, Clone)]
pub struct ProbabilisticLcuRun {
    /// Final (unprojected) state over system + 1 ancilla.
    pub state: Statevector,
    /// Ancilla-zero probability recorded after each round.
    pub ancilla_zero_probs: Vec<f64>,
    /// Which unitary was drawn in each round.
    pub selections: Vec<usize>,
    /// The executed circuit, for resource analysis. Depth grows linearly in
    /// the round count.
    pub circuit: Circuit,
    /// Control convention: the drawn unitary triggers on ancilla value 1.
    pub controlled_on_one: bool,
}

/// Run R rounds: each round applies H on the ancilla, draws one unitary from
/// the weight distribution, applies it controlled on ancilla = 1, and closes
/// with another H. Deterministic given the generator's seed.
pub fn probabilistic_lcu(
    unitaries: &[StatePrep],
    weights: Option<&[f64]>,
    rounds: u32,
    rng: &mut impl Rng,
) -> Result<ProbabilisticLcuRun, QhdcError> {
    if unitaries.is_empty() {
        return Err(QhdcError::invalid("probabilistic LCU needs unitaries"));
    }
    if rounds == 0 {
        return Err(QhdcError::invalid("round count must be >= 1"));
    }
    let k = unitaries.len();
    let n_system = unitaries[0].n_qubits();
    for u in unitaries {
        if u.n_qubits() != n_system {
            return Err(QhdcError::DimensionMismatch(n_system, u.n_qubits()));
        }
    }
    let weights: Vec<f64> = match weights {
        Some(w) => {
            if w.len() != k || w.iter().any(|&x| x < 0.0) {
                return Err(QhdcError::invalid("weights must be nonnegative, one per unitary"));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(QhdcError::invalid("weights must sum to 1"));
            }
            w.to_vec()
        }
        None => vec![1.0 / k as f64; k],
    };

    let ancilla = n_system;
    let mut circuit = Circuit::new(n_system + 1);
    circuit.set_role(ancilla, QubitRole::Ancilla);
    let mut state = Statevector::zero(n_system + 1)?;
    let mut selections = Vec::with_capacity(rounds as usize);
    let mut ancilla_zero_probs = Vec::with_capacity(rounds as usize);

    for _ in 0..rounds {
        let draw: f64 = rng.gen();
        let mut acc = 0.0;
        let mut chosen = k - 1;
        for (i, &w) in weights.iter().enumerate() {
            acc += w;
            if draw < acc {
                chosen = i;
                break;
            }
        }
        selections.push(chosen);

        circuit.push(Gate::Hadamard { qubit: ancilla })?;
        for gate in unitaries[chosen].circuit().gates() {
            circuit.push(gate.clone().controlled(ancilla))?;
        }
        circuit.push(Gate::Hadamard { qubit: ancilla })?;

        state = Statevector::zero(n_system + 1)?;
        state.apply_circuit(&circuit)?;
        ancilla_zero_probs.push(state.outcome_probability(&[ancilla], &[false]));
    }

    Ok(ProbabilisticLcuRun {
        state,
        ancilla_zero_probs,
        selections,
        circuit,
        controlled_on_one: true,
    })
}

/// Serializable round statistics for reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbabilisticLcuStats {
    pub rounds: u32,
    pub ancilla_zero_probs: Vec<f64>,
    pub selections: Vec<usize>,
    pub controlled_on_one: bool,
}

impl From<&ProbabilisticLcuRun> for ProbabilisticLcuStats {
    fn from(run: &ProbabilisticLcuRun) -> Self {
        Self {
            rounds: run.selections.len() as u32,
            ancilla_zero_probs: run.ancilla_zero_probs.clone(),
            selections: run.selections.clone(),
            controlled_on_one: run.controlled_on_one,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PhaseOracle;
    use hdc_core::BipolarHypervector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use statevector_sim::Complex;

    fn prep_of(cs: &[i8]) -> StatePrep {
        let v = BipolarHypervector::new(cs.to_vec()).unwrap();
        StatePrep::from_oracle(&PhaseOracle::from_bipolar(&v).unwrap()).unwrap()
    }

    #[test]
    fn single_round_single_unitary_gives_average_with_identity() {
        // One round of H, controlled-U, H leaves (I + U)/2 |0> on the
        // ancilla-zero branch.
        let u = prep_of(&[1, -1, 1, -1]);
        let psi = u.simulate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let run = probabilistic_lcu(&[u], None, 1, &mut rng).unwrap();

        let mut state = run.state.clone();
        state.project(&[2], &[false]).unwrap();
        let projected = state.trace_out_zeroed(&[2]).unwrap();

        let mut expected: Vec<Complex> = psi.amplitudes().to_vec();
        expected[0] += Complex::new(1.0, 0.0); // plus the untouched |00> branch
        let norm = expected.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for (a, e) in projected.amplitudes().iter().zip(&expected) {
            assert!((a - e / norm).norm() < 1e-10);
        }
    }

    #[test]
    fn degenerate_weights_always_select_the_same_unitary() {
        let us = [prep_of(&[1, 1, 1, 1]), prep_of(&[1, -1, -1, 1])];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let run = probabilistic_lcu(&us, Some(&[1.0, 0.0]), 8, &mut rng).unwrap();
        assert!(run.selections.iter().all(|&s| s == 0));
    }

    #[test]
    fn runs_are_deterministic_given_seed() {
        let us = [prep_of(&[1, 1, -1, 1]), prep_of(&[-1, 1, 1, 1])];
        let mut r1 = ChaCha8Rng::seed_from_u64(4);
        let mut r2 = ChaCha8Rng::seed_from_u64(4);
        let a = probabilistic_lcu(&us, None, 5, &mut r1).unwrap();
        let b = probabilistic_lcu(&us, None, 5, &mut r2).unwrap();
        assert_eq!(a.selections, b.selections);
        assert_eq!(a.ancilla_zero_probs, b.ancilla_zero_probs);
    }

    #[test]
    fn gate_count_grows_linearly_in_rounds() {
        let us = [prep_of(&[1, 1, -1, 1])];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let one = probabilistic_lcu(&us, None, 1, &mut rng).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fifteen = probabilistic_lcu(&us, None, 15, &mut rng).unwrap();
        assert_eq!(fifteen.circuit.len(), 15 * one.circuit.len());
    }
}
