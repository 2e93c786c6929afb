//! Multi-controlled X lowering: the exact Toffoli network plus the
//! borrowed-bit split recursion for higher control counts.

use statevector_sim::Gate;

use crate::sink::GateSink;
use crate::SynthError;

const T_ANGLE: f64 = std::f64::consts::FRAC_PI_4;

/// Exact Toffoli as H, T, T-dagger and six CNOTs.
pub fn emit_toffoli(a: usize, b: usize, target: usize, sink: &mut impl GateSink) {
    sink.gate(Gate::Hadamard { qubit: target });
    sink.gate(Gate::Cnot { control: b, target });
    sink.gate(Gate::PhaseShift { qubit: target, lambda: -T_ANGLE });
    sink.gate(Gate::Cnot { control: a, target });
    sink.gate(Gate::PhaseShift { qubit: target, lambda: T_ANGLE });
    sink.gate(Gate::Cnot { control: b, target });
    sink.gate(Gate::PhaseShift { qubit: target, lambda: -T_ANGLE });
    sink.gate(Gate::Cnot { control: a, target });
    sink.gate(Gate::PhaseShift { qubit: b, lambda: T_ANGLE });
    sink.gate(Gate::PhaseShift { qubit: target, lambda: T_ANGLE });
    sink.gate(Gate::Hadamard { qubit: target });
    sink.gate(Gate::Cnot { control: a, target: b });
    sink.gate(Gate::PhaseShift { qubit: a, lambda: T_ANGLE });
    sink.gate(Gate::PhaseShift { qubit: b, lambda: -T_ANGLE });
    sink.gate(Gate::Cnot { control: a, target: b });
}

/// Multi-controlled X with all-true controls. For three or more controls one
/// borrowed (dirty) wire is required; the split recursion
/// C^c(X) = B A B A with A = C^{ceil(c/2)}(X -> d) and
/// B = C^{floor(c/2)+1}(X -> t) restores the borrowed wire and is exact on
/// every basis state, so any wire outside the gate's span qualifies.
pub fn emit_mcx(
    controls: &[usize],
    target: usize,
    dirty: &[usize],
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    match controls.len() {
        0 => {
            sink.gate(Gate::PauliX { qubit: target });
            Ok(())
        }
        1 => {
            sink.gate(Gate::Cnot { control: controls[0], target });
            Ok(())
        }
        2 => {
            emit_toffoli(controls[0], controls[1], target, sink);
            Ok(())
        }
        c => {
            let d = *dirty.first().ok_or_else(|| {
                SynthError::invalid("multi-controlled X with >= 3 controls needs a borrowed wire")
            })?;
            let m1 = c.div_ceil(2);
            let g1 = &controls[..m1];
            let mut g2: Vec<usize> = controls[m1..].to_vec();
            g2.push(d);
            let dirty_for_g2 = g1.to_vec();
            let mut dirty_for_g1: Vec<usize> = controls[m1..].to_vec();
            dirty_for_g1.push(target);
            for _ in 0..2 {
                emit_mcx(&g2, target, &dirty_for_g2, sink)?;
                emit_mcx(g1, d, &dirty_for_g1, sink)?;
            }
            Ok(())
        }
    }
}

/// Multi-controlled X on a mixed control pattern: zero-valued controls are
/// conjugated by X.
pub fn emit_mcx_on(
    controls: &[usize],
    values: &[bool],
    target: usize,
    dirty: &[usize],
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    for (&q, &v) in controls.iter().zip(values) {
        if !v {
            sink.gate(Gate::PauliX { qubit: q });
        }
    }
    emit_mcx(controls, target, dirty, sink)?;
    for (&q, &v) in controls.iter().zip(values) {
        if !v {
            sink.gate(Gate::PauliX { qubit: q });
        }
    }
    Ok(())
}
