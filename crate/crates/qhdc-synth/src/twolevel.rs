//! Two-level (Givens) decomposition of dense unitaries.
//!
//! Column j is reduced onto index j through a tree of SU(2) rotations
//! between basis states that differ in exactly one bit, so every core lowers
//! to a multi-controlled single-qubit gate without Gray routing. What
//! remains is a residual diagonal. This mirrors generic transpiler
//! synthesis: cost grows with the 4^n two-level count.

use num_complex::Complex64;
use statevector_sim::UnitaryMatrix;

use crate::diagonal::lower_diagonal_exact;
use crate::mcu::{dress_false_controls, emit_mcu_su2, CoreCache};
use crate::rotations::{mat2_dagger, Mat2};
use crate::sink::{GateSink, Tally};
use crate::SynthError;

/// One Givens core: an SU(2) rotation between basis rows `lo` and
/// `hi = lo | (1 << bit)`.
#[derive(Debug, Clone)]
pub struct TwoLevelCore {
    pub lo: usize,
    pub bit: usize,
    pub matrix: Mat2,
}

/// The full plan: cores in application order, then a residual diagonal
/// (also in application order: diagonal first).
#[derive(Debug, Clone)]
pub struct TwoLevelPlan {
    pub n_qubits: usize,
    pub residual: Vec<Complex64>,
    pub cores: Vec<TwoLevelCore>,
}

/// Parent of r in the reduction tree toward j: flip one bit to move a step
/// closer in Hamming distance while staying >= j.
fn parent_toward(r: usize, j: usize) -> usize {
    let missing = j & !r;
    if missing != 0 {
        r | (missing & missing.wrapping_neg())
    } else {
        let extra = r & !j;
        debug_assert!(extra != 0);
        r & !(extra & extra.wrapping_neg())
    }
}

/// Decompose a unitary into 1-bit-adjacent SU(2) two-level rotations plus a
/// residual diagonal: U = G_1^dag ... G_K^dag D.
pub fn decompose_two_level(u: &UnitaryMatrix) -> Result<TwoLevelPlan, SynthError> {
    let d = u.dim();
    let n_qubits = d.trailing_zeros() as usize;
    let mut w: Vec<Complex64> = u.elements().to_vec();
    let at = |w: &Vec<Complex64>, r: usize, c: usize| w[r * d + c];

    let mut forward: Vec<TwoLevelCore> = Vec::new();
    for j in 0..d {
        // Zero rows below the pivot in decreasing Hamming distance so every
        // partner is processed later (or is j itself).
        let mut rows: Vec<usize> = (j + 1..d).collect();
        rows.sort_by_key(|&r| std::cmp::Reverse(((r ^ j).count_ones(), r)));
        for r in rows {
            let b = at(&w, r, j);
            if b.norm() < 1e-14 {
                continue;
            }
            let p = parent_toward(r, j);
            let a = at(&w, p, j);
            let rho = (a.norm_sqr() + b.norm_sqr()).sqrt();
            // G = (1/rho) [[a*, b*], [-b, a]] in row space (p, r): det 1,
            // sends (a, b) to (rho, 0).
            let g = [
                a.conj() / rho,
                b.conj() / rho,
                -b / rho,
                a / rho,
            ];
            for col in 0..d {
                let xp = w[p * d + col];
                let xr = w[r * d + col];
                w[p * d + col] = g[0] * xp + g[1] * xr;
                w[r * d + col] = g[2] * xp + g[3] * xr;
            }
            let bit = (p ^ r).trailing_zeros() as usize;
            let (lo, hi) = (p.min(r), p.max(r));
            debug_assert_eq!(hi, lo | (1 << bit));
            // Reorder G onto (lo, hi) row indexing.
            let matrix = if p == lo { g } else { [g[3], g[2], g[1], g[0]] };
            forward.push(TwoLevelCore { lo, bit, matrix });
        }
    }

    let mut residual = Vec::with_capacity(d);
    for r in 0..d {
        for c in 0..d {
            let v = at(&w, r, c);
            if r == c {
                if (v.norm() - 1.0).abs() > 1e-8 {
                    return Err(SynthError::invalid(
                        "two-level reduction did not reach a unit diagonal",
                    ));
                }
            } else if v.norm() > 1e-8 {
                return Err(SynthError::invalid(
                    "two-level reduction left off-diagonal mass",
                ));
            }
        }
        residual.push(at(&w, r, r) / at(&w, r, r).norm());
    }

    // U = G_1^dag ... G_K^dag D: application order is D, then the daggered
    // cores in reverse elimination order.
    let cores = forward
        .into_iter()
        .rev()
        .map(|c| TwoLevelCore { lo: c.lo, bit: c.bit, matrix: mat2_dagger(&c.matrix) })
        .collect();
    Ok(TwoLevelPlan { n_qubits, residual, cores })
}

/// Control pattern of a core: every target-register bit except `bit` is a
/// control fixed to `lo`'s value.
fn core_controls(core: &TwoLevelCore, targets: &[usize]) -> (Vec<usize>, Vec<bool>) {
    let mut controls = Vec::with_capacity(targets.len() - 1);
    let mut values = Vec::with_capacity(targets.len() - 1);
    for (b, &wire) in targets.iter().enumerate() {
        if b != core.bit {
            controls.push(wire);
            values.push(core.lo >> b & 1 == 1);
        }
    }
    (controls, values)
}

/// Lower a multi-qubit unitary over `targets`, optionally controlled by
/// `anc_controls` (all taken as value-true here; callers dress mixed values
/// outside). Exact, phases included.
pub fn lower_unitary(
    u: &UnitaryMatrix,
    targets: &[usize],
    anc_controls: &[usize],
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    let plan = decompose_two_level(u)?;
    emit_plan(&plan, targets, anc_controls, sink)
}

pub fn emit_plan(
    plan: &TwoLevelPlan,
    targets: &[usize],
    anc_controls: &[usize],
    sink: &mut impl GateSink,
) -> Result<(), SynthError> {
    if targets.len() != plan.n_qubits {
        return Err(SynthError::invalid("target wire count mismatch"));
    }
    // Residual diagonal first (application order), merged over the ancilla
    // controls: identity on non-matching ancilla patterns.
    let all_wires: Vec<usize> = targets.iter().chain(anc_controls).copied().collect();
    let t = targets.len();
    let total = all_wires.len();
    let mut phases = vec![Complex64::new(1.0, 0.0); 1 << total];
    let anc_match = ((1usize << anc_controls.len()) - 1) << t;
    for (idx, slot) in phases.iter_mut().enumerate() {
        if idx & anc_match == anc_match {
            *slot = plan.residual[idx & ((1 << t) - 1)];
        }
    }
    if plan.residual.iter().any(|p| (p - Complex64::new(1.0, 0.0)).norm() > 1e-12) {
        lower_diagonal_exact(&all_wires, &phases, sink)?;
    }

    for core in &plan.cores {
        let (mut controls, mut values) = core_controls(core, targets);
        controls.extend_from_slice(anc_controls);
        values.extend(std::iter::repeat(true).take(anc_controls.len()));
        dress_false_controls(&controls, &values, sink);
        emit_mcu_su2(&core.matrix, &controls, targets[core.bit], sink)?;
        dress_false_controls(&controls, &values, sink);
    }
    Ok(())
}

/// Resource cost of a unitary controlled on `n_anc` extra wires, using the
/// cached canonical core costs. Slot layout: [targets 0..t) then ancillas
/// [t..t+n_anc); ancilla control values are all-true (mixed values are two X
/// gates per zero bit, added by the caller).
pub fn controlled_unitary_cost(
    u: &UnitaryMatrix,
    n_anc: usize,
    cache: &mut CoreCache,
) -> Result<Tally, SynthError> {
    let plan = decompose_two_level(u)?;
    let t = plan.n_qubits;
    let total = t + n_anc;
    let mut tally = Tally::new(total);

    // Residual diagonal, streamed once (structure is size-dependent only).
    let all_wires: Vec<usize> = (0..total).collect();
    let anc_match = ((1usize << n_anc) - 1) << t;
    if plan.residual.iter().any(|p| (p - Complex64::new(1.0, 0.0)).norm() > 1e-12) {
        let mut phases = vec![Complex64::new(1.0, 0.0); 1 << total];
        for (idx, slot) in phases.iter_mut().enumerate() {
            if idx & anc_match == anc_match {
                *slot = plan.residual[idx & ((1 << t) - 1)];
            }
        }
        lower_diagonal_exact(&all_wires, &phases, &mut tally)?;
    }

    let c_total = t - 1 + n_anc;
    let core_cost = cache.core_cost(c_total)?.clone();
    for core in &plan.cores {
        // X-dress the zero-valued system controls around the core.
        let (controls, values) = core_controls(core, &(0..t).collect::<Vec<_>>());
        let dressed: Vec<usize> = controls
            .iter()
            .zip(&values)
            .filter(|(_, &v)| !v)
            .map(|(&q, _)| q)
            .collect();
        for &q in &dressed {
            tally.gate(statevector_sim::Gate::PauliX { qubit: q });
        }
        // Map core slots onto wires: controls first (system then ancilla),
        // target last.
        let mut map: Vec<usize> = controls.clone();
        map.extend(t..total);
        map.push(core.bit);
        tally.append_cost(&core_cost, &map);
        for &q in &dressed {
            tally.gate(statevector_sim::Gate::PauliX { qubit: q });
        }
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sink::Collector;
    use statevector_sim::{Complex, Gate, Statevector};

    fn random_unitary(n: usize, seed: u64) -> UnitaryMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let d = 1usize << n;
        // Gram-Schmidt on a random complex matrix.
        let mut cols: Vec<Vec<Complex64>> = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect()
            })
            .collect();
        for i in 0..d {
            for _ in 0..2 {
                for k in 0..i {
                    let overlap: Complex64 = cols[k]
                        .iter()
                        .zip(&cols[i])
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    for r in 0..d {
                        let prev = cols[k][r];
                        cols[i][r] -= overlap * prev;
                    }
                }
            }
            let norm = cols[i].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for x in &mut cols[i] {
                *x /= norm;
            }
        }
        let mut elements = vec![Complex64::default(); d * d];
        for (c, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                elements[r * d + c] = x;
            }
        }
        UnitaryMatrix::new(d, elements).unwrap()
    }

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

    #[test]
    fn parent_steps_reduce_hamming_distance_and_stay_in_range() {
        for j in 0..16usize {
            for r in j + 1..16 {
                let p = parent_toward(r, j);
                assert_eq!((p ^ r).count_ones(), 1);
                assert!(p >= j);
                assert_eq!((p ^ j).count_ones(), (r ^ j).count_ones() - 1);
            }
        }
    }

    #[test]
    fn lowered_unitaries_match_their_source() {
        for n in 1..=3usize {
            let u = random_unitary(n, 60 + n as u64);
            let mut col = Collector::default();
            lower_unitary(&u, &(0..n).collect::<Vec<_>>(), &[], &mut col).unwrap();
            let cols = realized(&col.gates, n);
            let d = 1usize << n;
            for j in 0..d {
                for i in 0..d {
                    assert!(
                        (cols[j][i] - u.at(i, j)).norm() < 1e-9,
                        "n={n} entry ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn controlled_lowering_matches_block_matrix() {
        let n = 2usize;
        let u = random_unitary(n, 71);
        let mut col = Collector::default();
        lower_unitary(&u, &[0, 1], &[2, 3], &mut col).unwrap();
        let cols = realized(&col.gates, 4);
        let d = 1usize << 4;
        for j in 0..d {
            let active = j & 0b1100 == 0b1100;
            for i in 0..d {
                let expected = if !active {
                    if i == j { Complex::new(1.0, 0.0) } else { Complex::default() }
                } else if i & 0b1100 == 0b1100 {
                    u.at(i & 0b11, j & 0b11)
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

    #[test]
    fn cached_cost_agrees_with_streamed_lowering() {
        let u = random_unitary(2, 81);
        let mut cache = CoreCache::new();
        let fast = controlled_unitary_cost(&u, 2, &mut cache).unwrap();
        let mut direct = Tally::new(4);
        lower_unitary(&u, &[0, 1], &[2, 3], &mut direct).unwrap();
        assert_eq!(fast.gates, direct.gates);
        assert_eq!(fast.cnots, direct.cnots);
        assert_eq!(fast.depth(), direct.depth());
    }
}
