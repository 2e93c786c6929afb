//! Synthesis of circuit-IR gates into a primitive basis and resource
//! accounting on the lowered circuits.
//!
//! The primitive basis is {Rz, Ry, Rx, H, X, PhaseShift, CNOT}. Standalone
//! diagonal and single-qubit lowerings track a global phase (the circuit
//! equals `global_phase * source`); anything lowered inside a controlled
//! context is exact including phases, which the LCU and Hadamard-test
//! constructions rely on.

mod diagonal;
mod error;
mod lower;
mod mcu;
mod mcx;
mod multiplex;
mod qft;
mod resources;
mod rotations;
mod sink;
mod twolevel;

pub use diagonal::{lower_diagonal_exact, synth_diagonal};
pub use error::SynthError;
pub use lower::{lower_circuit_exact, lower_controlled, lower_gate};
pub use mcu::CoreCache;
pub use multiplex::{state_prep_tree, synth_multiplexed_rotation, RotationAxis};
pub use qft::synth_qft;
pub use resources::{
    circuit_unitary, report_from_tally, resources, resources_with_cache, ResourceReport,
};
pub use sink::{BlockCost, Collector, DepthProfile, GateSink, Tally};
pub use twolevel::{controlled_unitary_cost, decompose_two_level, lower_unitary};

use statevector_sim::{Circuit, Complex, Gate, SimError, Statevector};

/// A circuit over the primitive basis plus the tracked global phase:
/// `realized_unitary = global_phase * source_unitary`.
#[derive(Debug, Clone)]
pub struct PrimitiveCircuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub global_phase: Complex,
}

impl PrimitiveCircuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
            global_phase: Complex::new(1.0, 0.0),
        }
    }

    /// Realize the full operator column by column (test and verification use).
    pub fn unitary(&self) -> Result<Vec<Vec<Complex>>, SimError> {
        let dim = 1usize << self.n_qubits;
        let mut columns = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut amps = vec![Complex::default(); dim];
            amps[j] = Complex::new(1.0, 0.0);
            let mut state = Statevector::from_amplitudes(amps)?;
            for g in &self.gates {
                state.apply(g)?;
            }
            columns.push(state.amplitudes().to_vec());
        }
        Ok(columns)
    }

    pub fn to_circuit(&self) -> Result<Circuit, SimError> {
        let mut c = Circuit::new(self.n_qubits);
        for g in &self.gates {
            c.push(g.clone())?;
        }
        Ok(c)
    }
}

/// Is this gate in the primitive basis?
pub fn is_primitive(gate: &Gate) -> bool {
    matches!(
        gate,
        Gate::Hadamard { .. }
            | Gate::PauliX { .. }
            | Gate::PhaseShift { .. }
            | Gate::RotationX { .. }
            | Gate::RotationY { .. }
            | Gate::RotationZ { .. }
            | Gate::Cnot { .. }
    )
}
