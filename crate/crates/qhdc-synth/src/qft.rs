//! QFT lowering: Hadamards, controlled phases and the qubit-reversal swaps.

use statevector_sim::Gate;

use crate::sink::{Collector, GateSink};
use crate::{PrimitiveCircuit, SynthError};

/// Controlled phase as two CNOTs and three phase shifts, exact.
pub fn emit_controlled_phase(
    control: usize,
    target: usize,
    lambda: f64,
    sink: &mut impl GateSink,
) {
    sink.gate(Gate::PhaseShift { qubit: control, lambda: lambda / 2.0 });
    sink.gate(Gate::PhaseShift { qubit: target, lambda: lambda / 2.0 });
    sink.gate(Gate::Cnot { control, target });
    sink.gate(Gate::PhaseShift { qubit: target, lambda: -lambda / 2.0 });
    sink.gate(Gate::Cnot { control, target });
}

fn emit_swap(a: usize, b: usize, sink: &mut impl GateSink) {
    sink.gate(Gate::Cnot { control: a, target: b });
    sink.gate(Gate::Cnot { control: b, target: a });
    sink.gate(Gate::Cnot { control: a, target: b });
}

/// Lower the QFT over the listed qubits (qubits[0] = least-significant bit,
/// kernel e^{+i 2 pi jk / D}); `inverse` lowers the adjoint.
pub fn lower_qft(qubits: &[usize], inverse: bool, sink: &mut impl GateSink) {
    if inverse {
        // Adjoint: reverse the forward gate order, negate the angles.
        let mut collector = Collector::default();
        lower_qft(qubits, false, &mut collector);
        for gate in collector.gates.into_iter().rev() {
            sink.gate(gate.adjoint());
        }
        return;
    }
    let n = qubits.len();
    for i in (0..n).rev() {
        sink.gate(Gate::Hadamard { qubit: qubits[i] });
        for m in (0..i).rev() {
            let lambda = std::f64::consts::PI / (1u64 << (i - m)) as f64;
            emit_controlled_phase(qubits[m], qubits[i], lambda, sink);
        }
    }
    for i in 0..n / 2 {
        emit_swap(qubits[i], qubits[n - 1 - i], sink);
    }
}

/// The QFT over n qubits as a primitive circuit (no global phase).
pub fn synth_qft(n: usize) -> Result<PrimitiveCircuit, SynthError> {
    if n == 0 {
        return Err(SynthError::invalid("QFT needs at least one qubit"));
    }
    let qubits: Vec<usize> = (0..n).collect();
    let mut collector = Collector::default();
    lower_qft(&qubits, false, &mut collector);
    Ok(PrimitiveCircuit {
        n_qubits: n,
        gates: collector.gates,
        global_phase: statevector_sim::Complex::new(1.0, 0.0),
    })
}
