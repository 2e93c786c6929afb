//! State preparation circuits for encoded hypervectors.

use num_complex::Complex64;
use statevector_sim::{Circuit, Gate, Statevector, UnitaryMatrix};

use crate::{PhaseOracle, QhdcError};

/// A circuit mapping |0...0> to an encoded state. Plain bipolar preparations
/// are a Hadamard layer plus one diagonal; permuted and bundled states append
/// QFT blocks or collapse to an explicit unitary column.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePrep {
    circuit: Circuit,
}

impl StatePrep {
    /// Hadamard layer on every qubit, then the oracle as one diagonal gate.
    /// For a bipolar oracle of v the resulting amplitudes are v_i / sqrt(D).
    pub fn from_oracle(oracle: &PhaseOracle) -> Result<Self, QhdcError> {
        let n = oracle.n_qubits();
        let mut circuit = Circuit::new(n);
        for q in 0..n {
            circuit.push(Gate::Hadamard { qubit: q })?;
        }
        circuit.push(Gate::Diagonal {
            qubits: (0..n).collect(),
            phases: oracle.phases().to_vec(),
        })?;
        Ok(Self { circuit })
    }

    /// Wrap an arbitrary state as a preparation via an explicit unitary whose
    /// first column is the state (deterministic orthonormal completion).
    pub fn from_state(state: &Statevector) -> Result<Self, QhdcError> {
        let n = state.n_qubits();
        let matrix = complete_to_unitary(state.amplitudes())?;
        let mut circuit = Circuit::new(n);
        circuit.push(Gate::Unitary { qubits: (0..n).collect(), matrix })?;
        Ok(Self { circuit })
    }

    pub fn from_circuit(circuit: Circuit) -> Self {
        Self { circuit }
    }

    pub fn n_qubits(&self) -> usize {
        self.circuit.n_qubits()
    }

    pub fn dim(&self) -> usize {
        1 << self.circuit.n_qubits()
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// Append the cyclic-shift block: QFT, per-qubit phase shifts
    /// lambda_j = 2 pi s 2^j / D, inverse QFT. The net basis action is
    /// |j> -> |j + s mod D>.
    pub fn permuted(mut self, shift: i64) -> Result<Self, QhdcError> {
        let n = self.circuit.n_qubits();
        let dim = 1i64 << n;
        let s = shift.rem_euclid(dim);
        let qubits: Vec<usize> = (0..n).collect();
        self.circuit.push(Gate::Qft { qubits: qubits.clone() })?;
        for j in 0..n {
            let lambda =
                std::f64::consts::TAU * (s as f64) * ((1u64 << j) as f64) / (dim as f64);
            self.circuit.push(Gate::PhaseShift { qubit: j, lambda })?;
        }
        self.circuit.push(Gate::InverseQft { qubits })?;
        Ok(self)
    }

    /// Run the preparation from |0...0>.
    pub fn simulate(&self) -> Result<Statevector, QhdcError> {
        let mut state = Statevector::zero(self.circuit.n_qubits())?;
        state.apply_circuit(&self.circuit)?;
        Ok(state)
    }
}

/// Deterministically complete a unit vector to a unitary matrix whose first
/// column is that vector: Gram-Schmidt against the canonical basis, keeping
/// the first full-rank set, with one re-orthogonalization pass for stability.
pub fn complete_to_unitary(first_column: &[Complex64]) -> Result<UnitaryMatrix, QhdcError> {
    let d = first_column.len();
    if !d.is_power_of_two() {
        return Err(QhdcError::InvalidDimension(d));
    }
    let norm = first_column.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(QhdcError::invalid(format!(
            "first column norm {norm} is not 1"
        )));
    }
    let mut columns: Vec<Vec<Complex64>> = vec![first_column.to_vec()];
    for j in 0..d {
        if columns.len() == d {
            break;
        }
        let mut v: Vec<Complex64> = vec![Complex64::default(); d];
        v[j] = Complex64::new(1.0, 0.0);
        for _pass in 0..2 {
            for col in &columns {
                let overlap: Complex64 =
                    col.iter().zip(&v).map(|(c, x)| c.conj() * x).sum();
                for (x, c) in v.iter_mut().zip(col) {
                    *x -= overlap * c;
                }
            }
        }
        let vnorm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if vnorm > 1e-6 {
            for x in &mut v {
                *x /= vnorm;
            }
            columns.push(v);
        }
    }
    if columns.len() != d {
        return Err(QhdcError::invalid("orthonormal completion failed"));
    }
    let mut elements = vec![Complex64::default(); d * d];
    for (c, col) in columns.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            elements[r * d + c] = x;
        }
    }
    Ok(UnitaryMatrix::new(d, elements)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdc_core::BipolarHypervector;
    use statevector_sim::Complex;

    fn prep_of(cs: &[i8]) -> StatePrep {
        let v = BipolarHypervector::new(cs.to_vec()).unwrap();
        StatePrep::from_oracle(&PhaseOracle::from_bipolar(&v).unwrap()).unwrap()
    }

    #[test]
    fn identity_oracle_prepares_uniform_state() {
        let s = prep_of(&[1, 1, 1, 1]).simulate().unwrap();
        for a in s.amplitudes() {
            assert!((a - Complex::new(0.5, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn bipolar_prep_encodes_components_in_amplitudes() {
        let s = prep_of(&[1, -1, 1, -1]).simulate().unwrap();
        let expected = [0.5, -0.5, 0.5, -0.5];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!((a - Complex::new(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn shift_zero_and_full_cycle_are_identity() {
        for s in [0i64, 16] {
            let base = prep_of(&[1, -1, -1, 1, 1, 1, -1, 1, -1, -1, 1, 1, -1, 1, 1, -1]);
            let shifted = base.clone().permuted(s).unwrap().simulate().unwrap();
            let plain = base.simulate().unwrap();
            for (a, b) in shifted.amplitudes().iter().zip(plain.amplitudes()) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn shift_matches_classical_permute() {
        let v = BipolarHypervector::new(vec![1, -1, -1, 1]).unwrap();
        let prep = StatePrep::from_oracle(&PhaseOracle::from_bipolar(&v).unwrap()).unwrap();
        let shifted = prep.permuted(1).unwrap().simulate().unwrap();
        let classical = v.permute(1);
        for (a, &c) in shifted.amplitudes().iter().zip(classical.components()) {
            assert!((a - Complex::new(c as f64 / 2.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn completion_has_requested_first_column() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let col = vec![
            Complex64::new(h, 0.0),
            Complex64::new(0.0, -h),
            Complex64::default(),
            Complex64::default(),
        ];
        let u = complete_to_unitary(&col).unwrap();
        for (r, expected) in col.iter().enumerate() {
            assert!((u.at(r, 0) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn from_state_round_trips() {
        let prep = prep_of(&[1, -1, 1, 1]);
        let target = prep.simulate().unwrap();
        let rebuilt = StatePrep::from_state(&target).unwrap().simulate().unwrap();
        for (a, b) in rebuilt.amplitudes().iter().zip(target.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
