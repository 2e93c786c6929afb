//! Multi-controlled single-qubit unitaries.
//!
//! SU(2) payloads use the square-root recursion
//! C^c(V) = C(W) . C^{c-1}(X) . C(W^dag) . C^{c-1}(X) . C^{c-1}(W), W^2 = V,
//! whose inner multi-controlled X gates borrow the payload target as a dirty
//! wire. A determinant phase, when present, is a diagonal over the control
//! wires and is lowered exactly.

use std::collections::HashMap;

use num_complex::Complex64;
use statevector_sim::Gate;

use crate::diagonal::lower_diagonal_exact;
use crate::mcx::emit_mcx;
use crate::rotations::{emit_controlled_su2, emit_su2, factor_su2, mat2_dagger, su2_sqrt, Mat2};
use crate::sink::{BlockCost, GateSink, Tally};
use crate::SynthError;

/// Multi-controlled SU(2) gate with all-true controls; exact.
pub fn emit_mcu_su2(
    v: &Mat2,
    controls: &[usize],
    target: usize,
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    match controls.len() {
        0 => {
            emit_su2(v, target, sink);
            Ok(())
        }
        1 => {
            emit_controlled_su2(v, controls[0], target, sink);
            Ok(())
        }
        c => {
            let pivot = controls[c - 1];
            let rest = &controls[..c - 1];
            let w = su2_sqrt(v);
            let dirty = [target];
            emit_controlled_su2(&w, pivot, target, sink);
            emit_mcx(rest, pivot, &dirty, sink)?;
            emit_controlled_su2(&mat2_dagger(&w), pivot, target, sink);
            emit_mcx(rest, pivot, &dirty, sink)?;
            emit_mcu_su2(&w, rest, target, sink)
        }
    }
}

/// Multi-controlled arbitrary 2x2 unitary on a mixed control pattern; exact.
/// The determinant phase e^{i alpha} becomes a diagonal over the controls.
pub fn emit_mcu_single(
    u: &Mat2,
    controls: &[usize],
    values: &[bool],
    target: usize,
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    let (alpha, v) = factor_su2(u);
    if controls.is_empty() {
        if alpha.abs() > 1e-14 {
            crate::rotations::emit_global_phase(alpha, target, sink);
        }
        emit_su2(&v, target, sink);
        return Ok(());
    }
    if alpha.abs() > 1e-14 {
        let dim = 1usize << controls.len();
        let mut match_index = 0usize;
        for (b, &val) in values.iter().enumerate() {
            if val {
                match_index |= 1 << b;
            }
        }
        let mut phases = vec![Complex64::new(1.0, 0.0); dim];
        phases[match_index] = Complex64::from_polar(1.0, alpha);
        lower_diagonal_exact(controls, &phases, sink)?;
    }
    dress_false_controls(controls, values, sink);
    emit_mcu_su2(&v, controls, target, sink)?;
    dress_false_controls(controls, values, sink);
    Ok(())
}

pub(crate) fn dress_false_controls(
    controls: &[usize],
    values: &[bool],
    sink: &mut impl GateSink,
) {
    for (&q, &v) in controls.iter().zip(values) {
        if !v {
            sink.gate(Gate::PauliX { qubit: q });
        }
    }
}

/// Cached canonical costs of multi-controlled SU(2) cores, keyed by control
/// count. The recursion's gate pattern depends only on the control count and
/// the slot assignment, so one tally per count can be relabeled onto any
/// wires; angles never change the structure.
#[derive(Debug, Default)]
pub struct CoreCache {
    cores: HashMap<usize, BlockCost>,
}

impl CoreCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Cost of an all-true-controls SU(2) core over slots
    /// [0..c) (controls) and c (target).
    pub fn core_cost(&mut self, c: usize) -> Result<&BlockCost, SynthError> {
        if !self.cores.contains_key(&c) {
            // Structure is angle-independent; any non-degenerate payload works.
            let (s, co) = (0.4f64, (1.0f64 - 0.16).sqrt());
            let dummy: Mat2 = [
                Complex64::new(co, -0.2),
                Complex64::new(-s, 0.1),
                Complex64::new(s, 0.1),
                Complex64::new(co, 0.2),
            ];
            let (_, v) = factor_su2(&normalize_unitary(&dummy));
            let controls: Vec<usize> = (0..c).collect();
            let mut tally = Tally::new(c + 1);
            emit_mcu_su2(&v, &controls, c, &mut tally)?;
            self.cores.insert(c, BlockCost::from(tally));
        }
        Ok(&self.cores[&c])
    }
}

fn normalize_unitary(m: &Mat2) -> Mat2 {
    // Orthonormalize the two columns (Gram-Schmidt); keeps the cache payload
    // a genuine unitary without hand-tuning entries.
    let n0 = (m[0].norm_sqr() + m[2].norm_sqr()).sqrt();
    let c0 = [m[0] / n0, m[2] / n0];
    let overlap = c0[0].conj() * m[1] + c0[1].conj() * m[3];
    let mut c1 = [m[1] - overlap * c0[0], m[3] - overlap * c0[1]];
    let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
    c1 = [c1[0] / n1, c1[1] / n1];
    [c0[0], c1[0], c0[1], c1[1]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sink::Collector;
    use statevector_sim::{Complex, Statevector};

    fn realized(gates: &[Gate], n: usize) -> Vec<Vec<Complex>> {
        let dim = 1usize << n;
        (0..dim)
            .map(|j| {
                let mut amps = vec![Complex::default(); dim];
                amps[j] = Complex::new(1.0, 0.0);
                let mut s = Statevector::from_amplitudes(amps).unwrap();
                for g in gates {
                    s.apply(g).unwrap();
                }
                s.amplitudes().to_vec()
            })
            .collect()
    }

    fn check_mcu(u: &Mat2, controls: &[usize], values: &[bool], target: usize, n: usize) {
        let mut col = Collector::default();
        emit_mcu_single(u, controls, values, target, &mut col).unwrap();
        let cols = realized(&col.gates, n);
        let dim = 1usize << n;
        let tbit = 1usize << target;
        for j in 0..dim {
            let matches = controls
                .iter()
                .zip(values)
                .all(|(&q, &v)| (j >> q & 1 == 1) == v);
            for i in 0..dim {
                let expected = if !matches {
                    if i == j { Complex::new(1.0, 0.0) } else { Complex::default() }
                } else if i == j {
                    if j & tbit == 0 { u[0] } else { u[3] }
                } else if i == j ^ tbit {
                    if j & tbit == 0 { u[2] } else { u[1] }
                } else {
                    Complex::default()
                };
                assert!(
                    (cols[j][i] - expected).norm() < 1e-9,
                    "entry ({i},{j}): {} vs {expected}",
                    cols[j][i]
                );
            }
        }
    }

    fn hadamard() -> Mat2 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        [
            Complex64::new(h, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(-h, 0.0),
        ]
    }

    fn skew_su2() -> Mat2 {
        let raw: Mat2 = [
            Complex64::new(0.8, -0.3),
            Complex64::new(-0.6, 0.1),
            Complex64::new(0.6, 0.1),
            Complex64::new(0.8, 0.3),
        ];
        factor_su2(&normalize_unitary(&raw)).1
    }

    #[test]
    fn controlled_hadamard_is_exact_including_determinant_phase() {
        check_mcu(&hadamard(), &[1], &[true], 0, 2);
        check_mcu(&hadamard(), &[0, 2], &[true, true], 1, 3);
    }

    #[test]
    fn mixed_control_values_are_honored() {
        check_mcu(&skew_su2(), &[1, 2], &[false, true], 0, 3);
        check_mcu(&skew_su2(), &[0, 1, 3], &[true, false, false], 2, 4);
    }

    #[test]
    fn four_controls_still_exact() {
        check_mcu(&skew_su2(), &[0, 1, 2, 3], &[true; 4], 4, 5);
    }

    #[test]
    fn core_cache_matches_direct_tally() {
        let mut cache = CoreCache::new();
        let cached = cache.core_cost(3).unwrap().clone();
        let mut direct = Tally::new(4);
        let (_, v) = factor_su2(&skew_su2());
        emit_mcu_su2(&v, &[0, 1, 2], 3, &mut direct).unwrap();
        assert_eq!(cached.gates, direct.gates);
        assert_eq!(cached.cnots, direct.cnots);
        assert_eq!(cached.profile.depth(), direct.profile.depth());
    }
}
