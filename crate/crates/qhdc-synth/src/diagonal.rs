//! Diagonal synthesis by recursive Rz demultiplexing.
//!
//! An n-qubit diagonal lowers to one multiplexed Rz per qubit, for
//! 2^n - 2 CNOTs and 2^n - 1 rotations in the worst case. The mean angle is
//! a global phase: `synth_diagonal` reports it, `lower_diagonal_exact`
//! cancels it with the two-gate phase idiom so controlled contexts stay
//! exact.

use num_complex::Complex64;
use statevector_sim::Complex;

use crate::multiplex::{synth_multiplexed_rotation, RotationAxis};
use crate::rotations::emit_global_phase;
use crate::sink::{Collector, GateSink};
use crate::{PrimitiveCircuit, SynthError};

fn angles_of(phases: &[Complex64]) -> Result<Vec<f64>, SynthError> {
    if phases.is_empty() || !phases.len().is_power_of_two() {
        return Err(SynthError::invalid("diagonal needs 2^n phases"));
    }
    let mut angles = Vec::with_capacity(phases.len());
    for p in phases {
        if (p.norm() - 1.0).abs() > 1e-12 {
            return Err(SynthError::invalid(format!(
                "diagonal phase has modulus {} (must be 1)",
                p.norm()
            )));
        }
        angles.push(p.arg());
    }
    Ok(angles)
}

/// Demultiplex the angle vector over the given qubits (qubits[0] is the
/// least-significant bit). Returns the residual mean angle gamma: the
/// emitted gates realize e^{-i gamma} * diag(e^{i phi}).
fn demux_angles(
    mut angles: Vec<f64>,
    qubits: &[usize],
    sink: &mut impl GateSink,
) -> Result<f64, SynthError> {
    for (level, &target) in qubits.iter().enumerate() {
        let half = angles.len() / 2;
        let mut deltas = Vec::with_capacity(half);
        let mut means = Vec::with_capacity(half);
        for r in 0..half {
            let a0 = angles[2 * r];
            let a1 = angles[2 * r + 1];
            deltas.push(a1 - a0);
            means.push((a1 + a0) / 2.0);
        }
        if deltas.iter().any(|d| d.abs() > 1e-12) {
            let controls = &qubits[level + 1..];
            synth_multiplexed_rotation(RotationAxis::Z, &deltas, controls, target, sink)?;
        }
        angles = means;
    }
    Ok(angles[0])
}

/// Synthesize a standalone diagonal; the returned circuit realizes
/// `global_phase * diag(phases)` with the phase tracked, not emitted.
pub fn synth_diagonal(phases: &[Complex64]) -> Result<PrimitiveCircuit, SynthError> {
    let angles = angles_of(phases)?;
    let n = phases.len().trailing_zeros() as usize;
    let qubits: Vec<usize> = (0..n).collect();
    let mut collector = Collector::default();
    let gamma = demux_angles(angles, &qubits, &mut collector)?;
    Ok(PrimitiveCircuit {
        n_qubits: n,
        gates: collector.gates,
        global_phase: Complex::from_polar(1.0, -gamma),
    })
}

/// Lower a diagonal over arbitrary wires exactly, phase included.
pub fn lower_diagonal_exact(
    qubits: &[usize],
    phases: &[Complex64],
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    if phases.len() != 1 << qubits.len() {
        return Err(SynthError::invalid("phase count must be 2^(qubit count)"));
    }
    let angles = angles_of(phases)?;
    let gamma = demux_angles(angles, qubits, sink)?;
    if gamma.rem_euclid(std::f64::consts::TAU).abs() > 1e-12
        && (gamma.rem_euclid(std::f64::consts::TAU) - std::f64::consts::TAU).abs() > 1e-12
    {
        emit_global_phase(gamma, qubits[0], sink);
    }
    Ok(())
}
