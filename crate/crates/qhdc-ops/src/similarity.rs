//! Hadamard-test similarity between two state preparations.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statevector_sim::{Circuit, Gate, QubitRole, Statevector};

use crate::{QhdcError, StatePrep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityMode {
    Exact,
    Sampled,
}

/// An estimate of Re<psi|phi>. Exact estimates are reproducible bit for bit;
/// sampled ones carry the shot count and the standard error
/// sqrt(p(1-p)/S) of the measured ancilla probability.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SimilarityEstimate {
    pub value: f64,
    pub mode: SimilarityMode,
    pub shots: u64,
    pub std_error: f64,
}

/// Build the Hadamard-test circuit over n system qubits plus one ancilla:
/// H on the ancilla, prep_psi controlled on ancilla 0, prep_phi controlled on
/// ancilla 1, then H again. P(0) - P(1) on the ancilla is Re<psi|phi>.
pub fn hadamard_test_circuit(
    prep_psi: &StatePrep,
    prep_phi: &StatePrep,
) -> Result<Circuit, QhdcError> {
    let n = prep_psi.n_qubits();
    if prep_phi.n_qubits() != n {
        return Err(QhdcError::DimensionMismatch(n, prep_phi.n_qubits()));
    }
    let ancilla = n;
    let mut circuit = Circuit::new(n + 1);
    circuit.set_role(ancilla, QubitRole::Ancilla);
    circuit.push(Gate::Hadamard { qubit: ancilla })?;
    for gate in prep_psi.circuit().gates() {
        circuit.push(gate.clone().controlled_on(vec![ancilla], vec![false]))?;
    }
    for gate in prep_phi.circuit().gates() {
        circuit.push(gate.clone().controlled_on(vec![ancilla], vec![true]))?;
    }
    circuit.push(Gate::Hadamard { qubit: ancilla })?;
    Ok(circuit)
}

/// Exact-mode Hadamard test: the similarity from the final amplitudes.
pub fn hadamard_test(
    prep_psi: &StatePrep,
    prep_phi: &StatePrep,
) -> Result<SimilarityEstimate, QhdcError> {
    let circuit = hadamard_test_circuit(prep_psi, prep_phi)?;
    let ancilla = prep_psi.n_qubits();
    let mut state = Statevector::zero(circuit.n_qubits())?;
    state.apply_circuit(&circuit)?;
    let p0 = state.outcome_probability(&[ancilla], &[false]);
    Ok(SimilarityEstimate {
        value: 2.0 * p0 - 1.0,
        mode: SimilarityMode::Exact,
        shots: 0,
        std_error: 0.0,
    })
}

/// Sampled-mode Hadamard test: estimate the ancilla distribution from shots.
pub fn hadamard_test_sampled(
    prep_psi: &StatePrep,
    prep_phi: &StatePrep,
    shots: u64,
    rng: &mut impl Rng,
) -> Result<SimilarityEstimate, QhdcError> {
    if shots == 0 {
        return hadamard_test(prep_psi, prep_phi);
    }
    let circuit = hadamard_test_circuit(prep_psi, prep_phi)?;
    let ancilla = prep_psi.n_qubits();
    let mut state = Statevector::zero(circuit.n_qubits())?;
    state.apply_circuit(&circuit)?;
    let result = state.sample(&[ancilla], shots, rng, 0.0)?;
    let p0 = result.frequency("0");
    Ok(SimilarityEstimate {
        value: 2.0 * p0 - 1.0,
        mode: SimilarityMode::Sampled,
        shots,
        std_error: (p0 * (1.0 - p0) / shots as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PhaseOracle;
    use hdc_core::{cosine, BipolarHypervector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn prep_of(v: &BipolarHypervector) -> StatePrep {
        StatePrep::from_oracle(&PhaseOracle::from_bipolar(v).unwrap()).unwrap()
    }

    #[test]
    fn identical_preparations_read_one() {
        let v = BipolarHypervector::new(vec![1, -1, 1, 1]).unwrap();
        let est = hadamard_test(&prep_of(&v), &prep_of(&v)).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
        assert_eq!(est.mode, SimilarityMode::Exact);
    }

    #[test]
    fn opposite_preparations_read_minus_one() {
        let v = BipolarHypervector::new(vec![1, -1, 1, 1]).unwrap();
        let neg = BipolarHypervector::new(vec![-1, 1, -1, -1]).unwrap();
        let est = hadamard_test(&prep_of(&v), &prep_of(&neg)).unwrap();
        assert!((est.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_value_equals_classical_cosine_at_d16() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let u = BipolarHypervector::random(16, &mut rng).unwrap();
            let v = BipolarHypervector::random(16, &mut rng).unwrap();
            let est = hadamard_test(&prep_of(&u), &prep_of(&v)).unwrap();
            let expected = cosine(&u, &v).unwrap();
            assert!((est.value - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn sampled_mode_reports_bounded_std_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let u = BipolarHypervector::random(16, &mut rng).unwrap();
        let v = BipolarHypervector::random(16, &mut rng).unwrap();
        let mut shot_rng = ChaCha8Rng::seed_from_u64(33);
        let est =
            hadamard_test_sampled(&prep_of(&u), &prep_of(&v), 10_000, &mut shot_rng).unwrap();
        assert_eq!(est.shots, 10_000);
        assert!(est.std_error <= 0.005 + 1e-12);
        assert!(est.value.abs() <= 1.0 + 1e-9);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let u = BipolarHypervector::new(vec![1, -1, 1, 1]).unwrap();
        let w = BipolarHypervector::new(vec![1, -1, 1, 1, 1, -1, 1, 1]).unwrap();
        assert!(hadamard_test(&prep_of(&u), &prep_of(&w)).is_err());
    }
}
