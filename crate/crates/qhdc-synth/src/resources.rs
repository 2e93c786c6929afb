//! Resource reports on lowered circuits.

use serde::{Deserialize, Serialize};
use statevector_sim::{Circuit, QubitRole, UnitaryMatrix};

use crate::lower::lower_circuit_exact;
use crate::mcu::CoreCache;
use crate::sink::Tally;
use crate::SynthError;

/// Deterministic counts on a lowered circuit. Depth is the longest
/// dependency chain with every primitive gate costing one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub depth: u64,
    pub cnot_count: u64,
    pub total_gates: u64,
    pub n_system: usize,
    pub n_ancilla: usize,
}

fn role_split(circuit: &Circuit) -> (usize, usize) {
    let ancillas = circuit
        .roles()
        .iter()
        .filter(|r| **r == QubitRole::Ancilla)
        .count();
    (circuit.n_qubits() - ancillas, ancillas)
}

/// Lower the whole circuit and count.
pub fn resources(circuit: &Circuit) -> Result<ResourceReport, SynthError> {
    let mut tally = Tally::new(circuit.n_qubits());
    lower_circuit_exact(circuit, &mut tally)?;
    let (n_system, n_ancilla) = role_split(circuit);
    Ok(ResourceReport {
        depth: tally.depth(),
        cnot_count: tally.cnots,
        total_gates: tally.gates,
        n_system,
        n_ancilla,
    })
}

/// Report from an externally accumulated tally.
pub fn report_from_tally(tally: &Tally, n_system: usize, n_ancilla: usize) -> ResourceReport {
    ResourceReport {
        depth: tally.depth(),
        cnot_count: tally.cnots,
        total_gates: tally.gates,
        n_system,
        n_ancilla,
    }
}

/// Convenience wrapper keeping a shared multi-controlled-core cache across
/// several controlled-unitary costings.
pub fn resources_with_cache(
    matrix: &UnitaryMatrix,
    n_anc_controls: usize,
    cache: &mut CoreCache,
) -> Result<Tally, SynthError> {
    crate::twolevel::controlled_unitary_cost(matrix, n_anc_controls, cache)
}

/// Realize a circuit's full unitary (small registers; test and resource use).
pub fn circuit_unitary(circuit: &Circuit) -> Result<UnitaryMatrix, SynthError> {
    use statevector_sim::{Complex, Statevector};
    let n = circuit.n_qubits();
    let dim = 1usize << n;
    let mut elements = vec![Complex::default(); dim * dim];
    for j in 0..dim {
        let mut amps = vec![Complex::default(); dim];
        amps[j] = Complex::new(1.0, 0.0);
        let mut s = Statevector::from_amplitudes(amps)?;
        s.apply_circuit(circuit)?;
        for (i, a) in s.amplitudes().iter().enumerate() {
            elements[i * dim + j] = *a;
        }
    }
    Ok(UnitaryMatrix::new(dim, elements)?)
}
