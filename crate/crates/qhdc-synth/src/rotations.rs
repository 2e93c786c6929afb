//! Single-qubit decompositions: ZYZ angles, SU(2) square roots and the
//! exact two-gate global-phase idiom.

use num_complex::Complex64;
use statevector_sim::Gate;

use crate::sink::GateSink;

/// 2x2 complex matrix, row-major.
pub type Mat2 = [Complex64; 4];

#[cfg_attr(not(test), allow(dead_code))]
pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

pub fn mat2_dagger(a: &Mat2) -> Mat2 {
    [a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()]
}

/// ZYZ angles of a special-unitary matrix: V = Rz(beta) Ry(gamma) Rz(delta),
/// exact (no phase) for det V = 1.
pub fn zyz_angles_su2(v: &Mat2) -> (f64, f64, f64) {
    let c = v[0].norm();
    let s = v[2].norm();
    let gamma = 2.0 * s.atan2(c);
    if s < 1e-12 {
        // Diagonal: v00 = e^{-i(beta+delta)/2}; put everything on beta.
        let beta = -2.0 * v[0].arg();
        (beta, gamma, 0.0)
    } else if c < 1e-12 {
        // Anti-diagonal: v10 = e^{i(beta-delta)/2}.
        let beta = 2.0 * v[2].arg();
        (beta, gamma, 0.0)
    } else {
        let beta = v[2].arg() - v[0].arg();
        let delta = -v[2].arg() - v[0].arg();
        (beta, gamma, delta)
    }
}

/// Split an arbitrary 2x2 unitary into e^{i alpha} * V with V in SU(2).
pub fn factor_su2(u: &Mat2) -> (f64, Mat2) {
    let det = u[0] * u[3] - u[1] * u[2];
    let alpha = det.arg() / 2.0;
    let phase = Complex64::from_polar(1.0, -alpha);
    (alpha, [u[0] * phase, u[1] * phase, u[2] * phase, u[3] * phase])
}

/// Principal square root within SU(2): rotation by half the angle about the
/// same axis.
pub fn su2_sqrt(v: &Mat2) -> Mat2 {
    let cos_t = (0.5 * (v[0] + v[3]).re).clamp(-1.0, 1.0);
    let t = cos_t.acos();
    let sin_t = t.sin();
    if sin_t < 1e-12 {
        if cos_t > 0.0 {
            // sqrt(I) = I
            return [
                Complex64::new(1.0, 0.0),
                Complex64::default(),
                Complex64::default(),
                Complex64::new(1.0, 0.0),
            ];
        }
        // sqrt(-I) = Rz(pi)
        return [
            Complex64::new(0.0, -1.0),
            Complex64::default(),
            Complex64::default(),
            Complex64::new(0.0, 1.0),
        ];
    }
    let nz = -v[0].im / sin_t;
    let nx = -v[2].im / sin_t;
    let ny = v[2].re / sin_t;
    let (sh, ch) = (t / 2.0).sin_cos();
    [
        Complex64::new(ch, -sh * nz),
        Complex64::new(-sh * ny, -sh * nx),
        Complex64::new(sh * ny, -sh * nx),
        Complex64::new(ch, sh * nz),
    ]
}

/// Emit V in SU(2) as Rz(delta), Ry(gamma), Rz(beta) in application order.
pub fn emit_su2(v: &Mat2, qubit: usize, sink: &mut impl GateSink) {
    let (beta, gamma, delta) = zyz_angles_su2(v);
    sink.gate(Gate::RotationZ { qubit, theta: delta });
    sink.gate(Gate::RotationY { qubit, theta: gamma });
    sink.gate(Gate::RotationZ { qubit, theta: beta });
}

/// Emit a singly-controlled SU(2) gate via the ABC identity:
/// C(V) = A . CNOT . B . CNOT . C with ABC = I (exact, two CNOTs).
pub fn emit_controlled_su2(v: &Mat2, control: usize, target: usize, sink: &mut impl GateSink) {
    let (beta, gamma, delta) = zyz_angles_su2(v);
    // C = Rz((delta - beta)/2)
    sink.gate(Gate::RotationZ { qubit: target, theta: (delta - beta) / 2.0 });
    sink.gate(Gate::Cnot { control, target });
    // B = Ry(-gamma/2) Rz(-(delta + beta)/2), rightmost first.
    sink.gate(Gate::RotationZ { qubit: target, theta: -(delta + beta) / 2.0 });
    sink.gate(Gate::RotationY { qubit: target, theta: -gamma / 2.0 });
    sink.gate(Gate::Cnot { control, target });
    // A = Rz(beta) Ry(gamma/2), rightmost first.
    sink.gate(Gate::RotationY { qubit: target, theta: gamma / 2.0 });
    sink.gate(Gate::RotationZ { qubit: target, theta: beta });
}

/// Emit e^{i gamma} * Identity exactly on one wire: P(2 gamma) then
/// Rz(-2 gamma).
pub fn emit_global_phase(gamma: f64, qubit: usize, sink: &mut impl GateSink) {
    sink.gate(Gate::PhaseShift { qubit, lambda: 2.0 * gamma });
    sink.gate(Gate::RotationZ { qubit, theta: -2.0 * gamma });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sink::Collector;
    use statevector_sim::{Complex, Statevector};

    fn gate_matrix(gates: &[Gate]) -> Mat2 {
        let mut cols = Vec::new();
        for j in 0..2 {
            let mut amps = vec![Complex::default(); 2];
            amps[j] = Complex::new(1.0, 0.0);
            let mut s = Statevector::from_amplitudes(amps).unwrap();
            for g in gates {
                s.apply(g).unwrap();
            }
            cols.push(s.amplitudes().to_vec());
        }
        [cols[0][0], cols[1][0], cols[0][1], cols[1][1]]
    }

    fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    fn sample_su2() -> Vec<Mat2> {
        let mut out = Vec::new();
        for &(t, ax) in &[(0.7, 0), (2.3, 1), (1.1, 2), (0.0, 0), (std::f64::consts::PI, 1)] {
            let (s, c) = (t / 2.0_f64).sin_cos();
            let m: Mat2 = match ax {
                0 => [
                    Complex64::new(c, 0.0),
                    Complex64::new(0.0, -s),
                    Complex64::new(0.0, -s),
                    Complex64::new(c, 0.0),
                ],
                1 => [
                    Complex64::new(c, 0.0),
                    Complex64::new(-s, 0.0),
                    Complex64::new(s, 0.0),
                    Complex64::new(c, 0.0),
                ],
                _ => [
                    Complex64::new(c, -s),
                    Complex64::default(),
                    Complex64::default(),
                    Complex64::new(c, s),
                ],
            };
            out.push(m);
        }
        // A skew combination.
        out.push(mat2_mul(&out[0], &mat2_mul(&out[1], &out[2])));
        out
    }

    #[test]
    fn zyz_reproduces_su2_matrices() {
        for v in sample_su2() {
            let mut c = Collector::default();
            emit_su2(&v, 0, &mut c);
            let got = gate_matrix(&c.gates);
            assert!(close(&got, &v, 1e-10), "{v:?} vs {got:?}");
        }
    }

    #[test]
    fn su2_sqrt_squares_back() {
        for v in sample_su2() {
            let w = su2_sqrt(&v);
            let sq = mat2_mul(&w, &w);
            assert!(close(&sq, &v, 1e-10), "{v:?} vs {sq:?}");
        }
    }

    #[test]
    fn global_phase_idiom_is_exact() {
        for &gamma in &[0.3, -1.2, std::f64::consts::PI / 2.0] {
            let mut c = Collector::default();
            emit_global_phase(gamma, 0, &mut c);
            let got = gate_matrix(&c.gates);
            let expected = [
                Complex64::from_polar(1.0, gamma),
                Complex64::default(),
                Complex64::default(),
                Complex64::from_polar(1.0, gamma),
            ];
            assert!(close(&got, &expected, 1e-12));
        }
    }
}
