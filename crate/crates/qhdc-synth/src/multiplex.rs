//! Uniformly-controlled (multiplexed) rotations and real state preparation.

use statevector_sim::Gate;

use crate::sink::GateSink;
use crate::SynthError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationAxis {
    Y,
    Z,
}

fn rotation(axis: RotationAxis, qubit: usize, theta: f64) -> Gate {
    match axis {
        RotationAxis::Y => Gate::RotationY { qubit, theta },
        RotationAxis::Z => Gate::RotationZ { qubit, theta },
    }
}

/// Multiplexed rotation: applies R(angles[k]) on `target` for control
/// pattern k (controls[0] is the least-significant bit of k). The Gray-code
/// form interleaves 2^c rotations with 2^c CNOTs whose controls follow the
/// ruler sequence; exact because X R(t) X = R(-t) for both axes.
pub fn synth_multiplexed_rotation(
    axis: RotationAxis,
    angles: &[f64],
    controls: &[usize],
    target: usize,
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    let c = controls.len();
    let k = 1usize << c;
    if angles.len() != k {
        return Err(SynthError::invalid(format!(
            "multiplexed rotation over {c} controls needs {k} angles, got {}",
            angles.len()
        )));
    }
    if c == 0 {
        sink.gate(rotation(axis, target, angles[0]));
        return Ok(());
    }
    // The prefix-XOR of the emitted CNOT controls walks the Gray code, so
    // rotation slot i acts with sign (-1)^<gray(i), x> on control pattern x;
    // inverting that Hadamard system gives the slot angles. The transform is
    // a Walsh-Hadamard butterfly, O(c 2^c).
    let mut wht = angles.to_vec();
    let mut bit = 1;
    while bit < k {
        for base in (0..k).step_by(bit * 2) {
            for i in base..base + bit {
                let (a, b) = (wht[i], wht[i + bit]);
                wht[i] = a + b;
                wht[i + bit] = a - b;
            }
        }
        bit *= 2;
    }
    let gray = |i: usize| i ^ (i >> 1);
    for i in 0..k {
        let phi = wht[gray(i)] / k as f64;
        sink.gate(rotation(axis, target, phi));
        let ctrl_bit = if i + 1 == k {
            c - 1
        } else {
            (i + 1).trailing_zeros() as usize
        };
        sink.gate(Gate::Cnot { control: controls[ctrl_bit], target });
    }
    Ok(())
}

/// Prepare a real, nonnegative, unit-norm amplitude vector from |0...0> with
/// a tree of multiplexed Ry rotations (qubits[b] is bit b of the amplitude
/// index). Exact for this amplitude class; used for the LCU PREP weights.
pub fn state_prep_tree(
    amplitudes: &[f64],
    qubits: &[usize],
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    let m = qubits.len();
    if amplitudes.len() != 1 << m {
        return Err(SynthError::invalid("amplitude count must be 2^(qubit count)"));
    }
    if amplitudes.iter().any(|&a| a < 0.0) {
        return Err(SynthError::invalid("state_prep_tree needs nonnegative amplitudes"));
    }
    let norm: f64 = amplitudes.iter().map(|a| a * a).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(SynthError::invalid(format!("amplitudes have norm {norm}, need 1")));
    }
    if m == 0 {
        return Ok(());
    }
    // Level l rotates qubit m-1-l, controlled by the higher qubits.
    for level in 0..m {
        let t_bit = m - 1 - level;
        let n_ctrl = level;
        let mut angles = vec![0.0; 1 << n_ctrl];
        for (pattern, angle) in angles.iter_mut().enumerate() {
            // Sum |a|^2 over indices whose bits above t_bit match `pattern`
            // (pattern bit i corresponds to index bit t_bit + 1 + i).
            let mut w0 = 0.0;
            let mut w1 = 0.0;
            for (j, &a) in amplitudes.iter().enumerate() {
                if j >> (t_bit + 1) == reorder(pattern, n_ctrl) {
                    if j >> t_bit & 1 == 0 {
                        w0 += a * a;
                    } else {
                        w1 += a * a;
                    }
                }
            }
            *angle = 2.0 * w1.sqrt().atan2(w0.sqrt());
        }
        let controls: Vec<usize> = (0..n_ctrl).map(|i| qubits[t_bit + 1 + i]).collect();
        synth_multiplexed_rotation(RotationAxis::Y, &angles, &controls, qubits[t_bit], sink)?;
    }
    Ok(())
}

// Control pattern bit i maps to index bit t_bit+1+i, which is already the
// natural order; kept as a named hook for clarity at call sites.
fn reorder(pattern: usize, _n_ctrl: usize) -> usize {
    pattern
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sink::Collector;
    use statevector_sim::{Complex, Statevector};

    #[test]
    fn multiplexed_rz_realizes_every_branch() {
        let angles = [0.3, -0.7, 1.1, 0.2];
        let mut col = Collector::default();
        synth_multiplexed_rotation(RotationAxis::Z, &angles, &[1, 2], 0, &mut col).unwrap();
        // Check each control branch on basis states.
        for pattern in 0..4usize {
            for t in 0..2usize {
                let j = t | (pattern << 1);
                let mut amps = vec![Complex::default(); 8];
                amps[j] = Complex::new(1.0, 0.0);
                let mut s = Statevector::from_amplitudes(amps).unwrap();
                for g in &col.gates {
                    s.apply(g).unwrap();
                }
                let theta = angles[pattern];
                let sign = if t == 0 { -1.0 } else { 1.0 };
                let expected = Complex::from_polar(1.0, sign * theta / 2.0);
                assert!(
                    (s.amplitudes()[j] - expected).norm() < 1e-12,
                    "pattern {pattern} t {t}"
                );
            }
        }
    }

    #[test]
    fn multiplexed_costs_match_the_closed_form() {
        let angles = vec![0.1; 8];
        let mut col = Collector::default();
        synth_multiplexed_rotation(RotationAxis::Y, &angles, &[1, 2, 3], 0, &mut col).unwrap();
        let cnots = col
            .gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count();
        assert_eq!(cnots, 8);
        assert_eq!(col.gates.len(), 16);
    }

    #[test]
    fn state_prep_tree_prepares_weight_vectors() {
        let cases: Vec<Vec<f64>> = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.5, 0.5, 0.5, 0.5],
            {
                let w = [0.4, 0.3, 0.2, 0.1f64];
                w.iter().map(|x| x.sqrt()).collect()
            },
            {
                // Zero-padded, like a PREP column for K=3.
                let w = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0f64];
                w.iter().map(|x| x.sqrt()).collect()
            },
        ];
        for amps in cases {
            let mut col = Collector::default();
            state_prep_tree(&amps, &[0, 1], &mut col).unwrap();
            let mut s = Statevector::zero(2).unwrap();
            for g in &col.gates {
                s.apply(g).unwrap();
            }
            for (got, want) in s.amplitudes().iter().zip(&amps) {
                assert!((got - Complex::new(*want, 0.0)).norm() < 1e-10, "{amps:?}");
            }
        }
    }
}
