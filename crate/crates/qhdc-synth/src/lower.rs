//! Lowering dispatch from the circuit IR onto the primitive basis.

use num_complex::Complex64;
use statevector_sim::{Circuit, Complex, Gate};

use crate::diagonal::lower_diagonal_exact;
use crate::mcu::emit_mcu_single;
use crate::mcx::emit_mcx_on;
use crate::qft::lower_qft;
use crate::rotations::{factor_su2, Mat2};
use crate::sink::GateSink;
use crate::twolevel::lower_unitary;
use crate::{is_primitive, SynthError};

fn single_qubit_payload(gate: &Gate) -> Option<(usize, Mat2)> {
    let m = gate.matrix_2x2()?;
    let qubit = gate.qubits()[0];
    Some((qubit, m))
}

/// Lower one standalone gate. Returns the tracked global phase: the emitted
/// gates realize `phase * gate`.
pub fn lower_gate(
    gate: &Gate,
    n_register: usize,
    sink: &mut impl GateSink,
) -> Result<Complex, SynthError> {
    gate.validate(n_register)?;
    let one = Complex::new(1.0, 0.0);
    if is_primitive(gate) {
        sink.gate(gate.clone());
        return Ok(one);
    }
    match gate {
        Gate::Diagonal { qubits, phases } => {
            let pc = crate::synth_diagonal(phases)?;
            for g in &pc.gates {
                sink.gate(remap(g, qubits));
            }
            Ok(pc.global_phase)
        }
        Gate::Qft { qubits } => {
            lower_qft(qubits, false, sink);
            Ok(one)
        }
        Gate::InverseQft { qubits } => {
            lower_qft(qubits, true, sink);
            Ok(one)
        }
        Gate::Unitary { qubits, matrix } if qubits.len() == 1 => {
            let u: Mat2 = [matrix.at(0, 0), matrix.at(0, 1), matrix.at(1, 0), matrix.at(1, 1)];
            let (alpha, v) = factor_su2(&u);
            crate::rotations::emit_su2(&v, qubits[0], sink);
            Ok(Complex::from_polar(1.0, -alpha))
        }
        Gate::Unitary { qubits, matrix } => {
            lower_unitary(matrix, qubits, &[], sink)?;
            Ok(one)
        }
        Gate::Controlled { gate, controls, values } => {
            lower_controlled(gate, controls, values, n_register, sink)?;
            Ok(one)
        }
        _ => Err(SynthError::NotLowerable(format!("{gate:?}"))),
    }
}

/// Lower a controlled gate exactly, global phase included (it is a relative
/// phase in this context).
pub fn lower_controlled(
    inner: &Gate,
    controls: &[usize],
    values: &[bool],
    n_register: usize,
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    match inner {
        // Diagonal-form payloads merge into one bigger diagonal.
        Gate::Diagonal { qubits, phases } => {
            let merged = merge_controlled_diagonal(qubits, phases, controls, values);
            let wires: Vec<usize> = qubits.iter().chain(controls).copied().collect();
            lower_diagonal_exact(&wires, &merged, sink)
        }
        Gate::PhaseShift { qubit, lambda } => {
            let phases = vec![Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, *lambda)];
            let merged = merge_controlled_diagonal(&[*qubit], &phases, controls, values);
            let wires: Vec<usize> = std::iter::once(*qubit).chain(controls.iter().copied()).collect();
            lower_diagonal_exact(&wires, &merged, sink)
        }
        Gate::RotationZ { qubit, theta } => {
            let phases = vec![
                Complex64::from_polar(1.0, -theta / 2.0),
                Complex64::from_polar(1.0, theta / 2.0),
            ];
            let merged = merge_controlled_diagonal(&[*qubit], &phases, controls, values);
            let wires: Vec<usize> = std::iter::once(*qubit).chain(controls.iter().copied()).collect();
            lower_diagonal_exact(&wires, &merged, sink)
        }
        Gate::PauliX { qubit } => {
            let dirty = free_wires(n_register, inner, controls);
            if controls.len() >= 3 && dirty.is_empty() {
                // No borrowable wire: go through the SU(2) route,
                // X = e^{i pi/2} Rx(pi).
                let m = inner.matrix_2x2().expect("single-qubit");
                emit_mcu_single(&m, controls, values, *qubit, sink)
            } else {
                emit_mcx_on(controls, values, *qubit, &dirty, sink)
            }
        }
        Gate::Cnot { control, target } => {
            let mut all_controls = controls.to_vec();
            all_controls.push(*control);
            let mut all_values = values.to_vec();
            all_values.push(true);
            let dirty = free_wires(n_register, inner, controls);
            if all_controls.len() >= 3 && dirty.is_empty() {
                let x = Gate::PauliX { qubit: *target };
                let m = x.matrix_2x2().expect("single-qubit");
                emit_mcu_single(&m, &all_controls, &all_values, *target, sink)
            } else {
                emit_mcx_on(&all_controls, &all_values, *target, &dirty, sink)
            }
        }
        Gate::Hadamard { .. } | Gate::RotationX { .. } | Gate::RotationY { .. } => {
            let (qubit, m) = single_qubit_payload(inner).expect("single-qubit");
            emit_mcu_single(&m, controls, values, qubit, sink)
        }
        Gate::Unitary { qubits, matrix } if qubits.len() == 1 => {
            let u: Mat2 = [matrix.at(0, 0), matrix.at(0, 1), matrix.at(1, 0), matrix.at(1, 1)];
            emit_mcu_single(&u, controls, values, qubits[0], sink)
        }
        Gate::Unitary { qubits, matrix } => {
            // Mixed ancilla values dress the whole block.
            crate::mcu::dress_false_controls(controls, values, sink);
            lower_unitary(matrix, qubits, controls, sink)?;
            crate::mcu::dress_false_controls(controls, values, sink);
            Ok(())
        }
        Gate::Qft { qubits } => lower_controlled_qft(qubits, false, controls, values, n_register, sink),
        Gate::InverseQft { qubits } => {
            lower_controlled_qft(qubits, true, controls, values, n_register, sink)
        }
        Gate::Controlled { gate, controls: inner_c, values: inner_v } => {
            let mut all_c = controls.to_vec();
            all_c.extend_from_slice(inner_c);
            let mut all_v = values.to_vec();
            all_v.extend_from_slice(inner_v);
            lower_controlled(gate, &all_c, &all_v, n_register, sink)
        }
    }
}

fn lower_controlled_qft(
    qubits: &[usize],
    inverse: bool,
    controls: &[usize],
    values: &[bool],
    n_register: usize,
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    // Control the expansion gate by gate; controlling each factor controls
    // the product exactly.
    let mut collector = crate::sink::Collector::default();
    lower_qft(qubits, inverse, &mut collector);
    for g in collector.gates {
        lower_controlled(&g, controls, values, n_register, sink)?;
    }
    Ok(())
}

fn merge_controlled_diagonal(
    qubits: &[usize],
    phases: &[Complex64],
    controls: &[usize],
    values: &[bool],
) -> Vec<Complex64> {
    let t = qubits.len();
    let c = controls.len();
    let mut match_bits = 0usize;
    for (b, &v) in values.iter().enumerate() {
        if v {
            match_bits |= 1 << b;
        }
    }
    let cmask = (1usize << c) - 1;
    let mut merged = vec![Complex64::new(1.0, 0.0); 1 << (t + c)];
    for (idx, slot) in merged.iter_mut().enumerate() {
        if (idx >> t) & cmask == match_bits {
            *slot = phases[idx & ((1 << t) - 1)];
        }
    }
    merged
}

fn free_wires(n_register: usize, inner: &Gate, controls: &[usize]) -> Vec<usize> {
    let mut used: Vec<usize> = inner.qubits();
    used.extend_from_slice(controls);
    (0..n_register).filter(|q| !used.contains(q)).collect()
}

fn remap(gate: &Gate, map: &[usize]) -> Gate {
    match gate {
        Gate::Hadamard { qubit } => Gate::Hadamard { qubit: map[*qubit] },
        Gate::PauliX { qubit } => Gate::PauliX { qubit: map[*qubit] },
        Gate::PhaseShift { qubit, lambda } => Gate::PhaseShift { qubit: map[*qubit], lambda: *lambda },
        Gate::RotationX { qubit, theta } => Gate::RotationX { qubit: map[*qubit], theta: *theta },
        Gate::RotationY { qubit, theta } => Gate::RotationY { qubit: map[*qubit], theta: *theta },
        Gate::RotationZ { qubit, theta } => Gate::RotationZ { qubit: map[*qubit], theta: *theta },
        Gate::Cnot { control, target } => Gate::Cnot { control: map[*control], target: map[*target] },
        other => other.clone(),
    }
}

/// Lower a whole circuit exactly: tracked phases from standalone gates are
/// cancelled in place with the two-gate phase idiom, so the lowered stream
/// realizes the circuit's unitary including phase.
pub fn lower_circuit_exact(circuit: &Circuit, sink: &mut impl GateSink) -> Result<(), SynthError> {
    for gate in circuit.gates() {
        let phase = lower_gate(gate, circuit.n_qubits(), sink)?;
        if (phase - Complex::new(1.0, 0.0)).norm() > 1e-14 {
            // Emitted = phase * gate; append phase^{-1} to cancel.
            let gamma = -phase.arg();
            crate::rotations::emit_global_phase(gamma, gate.qubits()[0], sink);
        }
    }
    Ok(())
}
