//! Gate intermediate representation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Complex, SimError, NORM_TOL, PHASE_TOL};

/// Dense unitary over a small qubit set, row-major, dimension 2^k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryMatrix {
    dim: usize,
    elements: Vec<Complex64>,
}

impl UnitaryMatrix {
    /// Wrap a row-major matrix, checking shape and unitarity (U†U = I).
    pub fn new(dim: usize, elements: Vec<Complex64>) -> Result<Self, SimError> {
        if !dim.is_power_of_two() || elements.len() != dim * dim {
            return Err(SimError::invalid(format!(
                "unitary must be a row-major 2^k x 2^k matrix, got dim {dim} with {} elements",
                elements.len()
            )));
        }
        let m = Self { dim, elements };
        m.check_unitary()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.elements[row * self.dim + col]
    }

    pub fn elements(&self) -> &[Complex64] {
        &self.elements
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let mut elements = vec![Complex64::default(); d * d];
        for r in 0..d {
            for c in 0..d {
                elements[c * d + r] = self.at(r, c).conj();
            }
        }
        Self { dim: d, elements }
    }

    fn check_unitary(&self) -> Result<(), SimError> {
        let d = self.dim;
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::default();
                for k in 0..d {
                    acc += self.at(k, r).conj() * self.at(k, c);
                }
                let expected = if r == c { 1.0 } else { 0.0 };
                if (acc - expected).norm() > NORM_TOL * (d as f64).sqrt() {
                    return Err(SimError::invalid(format!(
                        "matrix is not unitary: (U†U)[{r}][{c}] = {acc}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A quantum gate. `Controlled` wraps any gate with a set of control qubits
/// and the bit values that activate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Hadamard { qubit: usize },
    PauliX { qubit: usize },
    PhaseShift { qubit: usize, lambda: f64 },
    RotationX { qubit: usize, theta: f64 },
    RotationY { qubit: usize, theta: f64 },
    RotationZ { qubit: usize, theta: f64 },
    Cnot { control: usize, target: usize },
    Diagonal { qubits: Vec<usize>, phases: Vec<Complex64> },
    Qft { qubits: Vec<usize> },
    InverseQft { qubits: Vec<usize> },
    Unitary { qubits: Vec<usize>, matrix: UnitaryMatrix },
    Controlled { gate: Box<Gate>, controls: Vec<usize>, values: Vec<bool> },
}

impl Gate {
    /// Convenience constructor for a single positive control.
    pub fn controlled(self, control: usize) -> Gate {
        Gate::Controlled {
            gate: Box::new(self),
            controls: vec![control],
            values: vec![true],
        }
    }

    /// Control on an arbitrary bit pattern.
    pub fn controlled_on(self, controls: Vec<usize>, values: Vec<bool>) -> Gate {
        Gate::Controlled {
            gate: Box::new(self),
            controls,
            values,
        }
    }

    /// Qubits the gate acts on, controls included.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Hadamard { qubit }
            | Gate::PauliX { qubit }
            | Gate::PhaseShift { qubit, .. }
            | Gate::RotationX { qubit, .. }
            | Gate::RotationY { qubit, .. }
            | Gate::RotationZ { qubit, .. } => vec![*qubit],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Diagonal { qubits, .. }
            | Gate::Qft { qubits }
            | Gate::InverseQft { qubits }
            | Gate::Unitary { qubits, .. } => qubits.clone(),
            Gate::Controlled { gate, controls, .. } => {
                let mut qs = gate.qubits();
                qs.extend_from_slice(controls);
                qs
            }
        }
    }

    /// The adjoint gate: applying `g` then `g.adjoint()` is the identity.
    pub fn adjoint(&self) -> Gate {
        match self {
            Gate::Hadamard { .. } | Gate::PauliX { .. } | Gate::Cnot { .. } => self.clone(),
            Gate::PhaseShift { qubit, lambda } => Gate::PhaseShift {
                qubit: *qubit,
                lambda: -lambda,
            },
            Gate::RotationX { qubit, theta } => Gate::RotationX {
                qubit: *qubit,
                theta: -theta,
            },
            Gate::RotationY { qubit, theta } => Gate::RotationY {
                qubit: *qubit,
                theta: -theta,
            },
            Gate::RotationZ { qubit, theta } => Gate::RotationZ {
                qubit: *qubit,
                theta: -theta,
            },
            Gate::Diagonal { qubits, phases } => Gate::Diagonal {
                qubits: qubits.clone(),
                phases: phases.iter().map(Complex64::conj).collect(),
            },
            Gate::Qft { qubits } => Gate::InverseQft { qubits: qubits.clone() },
            Gate::InverseQft { qubits } => Gate::Qft { qubits: qubits.clone() },
            Gate::Unitary { qubits, matrix } => Gate::Unitary {
                qubits: qubits.clone(),
                matrix: matrix.dagger(),
            },
            Gate::Controlled { gate, controls, values } => Gate::Controlled {
                gate: Box::new(gate.adjoint()),
                controls: controls.clone(),
                values: values.clone(),
            },
        }
    }

    /// The 2x2 matrix `[m00, m01, m10, m11]` of a single-qubit gate kind.
    pub fn matrix_2x2(&self) -> Option<[Complex; 4]> {
        single_qubit_matrix(self)
    }

    /// Validate qubit indices, distinctness and payload well-formedness for a
    /// register of `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<(), SimError> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= n_qubits {
                return Err(SimError::invalid(format!(
                    "qubit {q} out of range for a {n_qubits}-qubit register"
                )));
            }
        }
        let mut sorted = qs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != qs.len() {
            return Err(SimError::invalid("gate qubit indices must be distinct"));
        }
        match self {
            Gate::Diagonal { qubits, phases } => {
                if qubits.is_empty() || phases.len() != 1 << qubits.len() {
                    return Err(SimError::invalid(format!(
                        "diagonal over {} qubits needs {} phases, got {}",
                        qubits.len(),
                        1usize << qubits.len(),
                        phases.len()
                    )));
                }
                for (i, p) in phases.iter().enumerate() {
                    if (p.norm() - 1.0).abs() > PHASE_TOL {
                        return Err(SimError::invalid(format!(
                            "diagonal phase {i} has modulus {} (must be 1)",
                            p.norm()
                        )));
                    }
                }
            }
            Gate::Qft { qubits } | Gate::InverseQft { qubits } => {
                if qubits.is_empty() {
                    return Err(SimError::invalid("QFT needs a non-empty qubit set"));
                }
            }
            Gate::Unitary { qubits, matrix } => {
                if matrix.dim() != 1 << qubits.len() {
                    return Err(SimError::invalid(format!(
                        "unitary dim {} does not match {} qubits",
                        matrix.dim(),
                        qubits.len()
                    )));
                }
            }
            Gate::Controlled { gate, controls, values } => {
                if controls.len() != values.len() {
                    return Err(SimError::invalid(
                        "controls and control values must have equal length",
                    ));
                }
                if controls.is_empty() {
                    return Err(SimError::invalid("controlled gate needs >= 1 control"));
                }
                gate.validate(n_qubits)?;
            }
            _ => {}
        }
        Ok(())
    }
}

pub(crate) const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// 2x2 matrix entries `[m00, m01, m10, m11]` for the single-qubit gate kinds.
pub(crate) fn single_qubit_matrix(gate: &Gate) -> Option<[Complex; 4]> {
    let i = Complex::i();
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::default();
    match gate {
        Gate::Hadamard { .. } => {
            let h = Complex::new(FRAC_1_SQRT_2, 0.0);
            Some([h, h, h, -h])
        }
        Gate::PauliX { .. } => Some([zero, one, one, zero]),
        Gate::PhaseShift { lambda, .. } => Some([one, zero, zero, (i * lambda).exp()]),
        Gate::RotationX { theta, .. } => {
            let (s, c) = (theta / 2.0).sin_cos();
            Some([
                Complex::new(c, 0.0),
                -i * s,
                -i * s,
                Complex::new(c, 0.0),
            ])
        }
        Gate::RotationY { theta, .. } => {
            let (s, c) = (theta / 2.0).sin_cos();
            Some([
                Complex::new(c, 0.0),
                Complex::new(-s, 0.0),
                Complex::new(s, 0.0),
                Complex::new(c, 0.0),
            ])
        }
        Gate::RotationZ { theta, .. } => Some([
            (-i * (theta / 2.0)).exp(),
            zero,
            zero,
            (i * (theta / 2.0)).exp(),
        ]),
        _ => None,
    }
}
