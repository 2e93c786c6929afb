//! Full-matrix verification of lowered blocks against their source gates,
//! plus the cost bounds the resource analysis relies on.

use num_complex::Complex64;
use qhdc_synth::{
    lower_controlled, lower_gate, resources, synth_diagonal, synth_qft, Collector, Tally,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statevector_sim::{Circuit, Complex, Gate, Statevector, UnitaryMatrix};

fn operator_of_gates(gates: &[Gate], n: usize) -> Vec<Vec<Complex>> {
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

fn operator_of_gate(gate: &Gate, n: usize) -> Vec<Vec<Complex>> {
    operator_of_gates(std::slice::from_ref(gate), n)
}

fn assert_equal_up_to_phase(
    lowered: &[Vec<Complex>],
    source: &[Vec<Complex>],
    phase: Complex,
    tol: f64,
    what: &str,
) {
    for (j, (lc, sc)) in lowered.iter().zip(source).enumerate() {
        for (i, (l, s)) in lc.iter().zip(sc).enumerate() {
            let expected = phase * s;
            assert!(
                (l - expected).norm() < tol,
                "{what}: entry ({i},{j}) {l} vs {expected}"
            );
        }
    }
}

fn random_phases(k: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..1usize << k)
        .map(|_| Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU))
        .collect()
}

fn random_unitary(n: usize, rng: &mut impl Rng) -> UnitaryMatrix {
    let d = 1usize << n;
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
                let overlap: Complex64 =
                    cols[k].iter().zip(&cols[i]).map(|(a, b)| a.conj() * b).sum();
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

#[test]
fn diagonal_synthesis_verified_to_six_qubits() {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    for n in 1..=6usize {
        let phases = random_phases(n, &mut rng);
        let pc = synth_diagonal(&phases).unwrap();
        let lowered = operator_of_gates(&pc.gates, n);
        let source = operator_of_gate(
            &Gate::Diagonal { qubits: (0..n).collect(), phases: phases.clone() },
            n,
        );
        assert_equal_up_to_phase(&lowered, &source, pc.global_phase, 1e-9, "diagonal");
    }
}

#[test]
fn qft_synthesis_verified_to_six_qubits() {
    for n in 1..=6usize {
        let pc = synth_qft(n).unwrap();
        let lowered = operator_of_gates(&pc.gates, n);
        let source = operator_of_gate(&Gate::Qft { qubits: (0..n).collect() }, n);
        assert_equal_up_to_phase(&lowered, &source, pc.global_phase, 1e-9, "qft");
    }
}

#[test]
fn controlled_x_single_control_is_one_cnot() {
    let mut col = Collector::default();
    lower_controlled(&Gate::PauliX { qubit: 0 }, &[1], &[true], 2, &mut col).unwrap();
    assert_eq!(col.gates.len(), 1);
    assert!(matches!(col.gates[0], Gate::Cnot { control: 1, target: 0 }));
}

#[test]
fn controlled_rz_single_control_uses_two_cnots_and_two_rz() {
    let mut col = Collector::default();
    lower_controlled(&Gate::RotationZ { qubit: 0, theta: 0.83 }, &[1], &[true], 2, &mut col)
        .unwrap();
    let cnots = col.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count();
    let rzs = col
        .gates
        .iter()
        .filter(|g| matches!(g, Gate::RotationZ { .. }))
        .count();
    assert_eq!(cnots, 2);
    assert_eq!(rzs, 2);
    let lowered = operator_of_gates(&col.gates, 2);
    let source = operator_of_gate(
        &Gate::RotationZ { qubit: 0, theta: 0.83 }.controlled(1),
        2,
    );
    assert_equal_up_to_phase(&lowered, &source, Complex::new(1.0, 0.0), 1e-9, "c-rz");
}

#[test]
fn controlled_blocks_verified_against_block_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let cases: Vec<(Gate, Vec<usize>, Vec<bool>, usize)> = vec![
        (Gate::Hadamard { qubit: 0 }, vec![1], vec![true], 2),
        (Gate::Hadamard { qubit: 2 }, vec![0, 1], vec![true, false], 3),
        (
            Gate::Diagonal { qubits: vec![0, 1], phases: random_phases(2, &mut rng) },
            vec![2, 3, 4, 5],
            vec![true, true, false, true],
            6,
        ),
        (
            Gate::PhaseShift { qubit: 1, lambda: 1.3 },
            vec![0, 2, 3],
            vec![false, true, true],
            4,
        ),
        (Gate::Qft { qubits: vec![0, 1] }, vec![2], vec![true], 3),
        (Gate::InverseQft { qubits: vec![0, 1, 2] }, vec![3, 4], vec![true, true], 5),
        (Gate::PauliX { qubit: 0 }, vec![1, 2, 3, 4], vec![true; 4], 6),
        (Gate::PauliX { qubit: 0 }, vec![1, 2, 3], vec![true; 3], 4), // no spare wire
        (Gate::RotationY { qubit: 3, theta: 0.6 }, vec![0, 1], vec![true, true], 4),
        (
            Gate::Unitary { qubits: vec![0, 1], matrix: random_unitary(2, &mut rng) },
            vec![2, 3],
            vec![true, false],
            5,
        ),
        (
            Gate::Unitary { qubits: vec![0, 1, 2], matrix: random_unitary(3, &mut rng) },
            vec![3, 4],
            vec![true, true],
            5,
        ),
        (
            Gate::Cnot { control: 1, target: 0 },
            vec![2, 3],
            vec![true, true],
            5,
        ),
    ];
    for (inner, controls, values, n) in cases {
        let mut col = Collector::default();
        lower_controlled(&inner, &controls, &values, n, &mut col).unwrap();
        let lowered = operator_of_gates(&col.gates, n);
        let source = operator_of_gate(
            &inner.clone().controlled_on(controls.clone(), values.clone()),
            n,
        );
        assert_equal_up_to_phase(
            &lowered,
            &source,
            Complex::new(1.0, 0.0),
            1e-9,
            &format!("{inner:?} on {controls:?}"),
        );
    }
}

#[test]
fn standalone_gate_lowering_tracks_phase_to_six_qubits() {
    let mut rng = ChaCha8Rng::seed_from_u64(92);
    for n in [2usize, 4, 6] {
        let gates = vec![
            Gate::Diagonal { qubits: (0..n).collect(), phases: random_phases(n, &mut rng) },
            Gate::Qft { qubits: (0..n).collect() },
            Gate::Unitary { qubits: vec![0], matrix: random_unitary(1, &mut rng) },
        ];
        for gate in gates {
            let mut col = Collector::default();
            let phase = lower_gate(&gate, n, &mut col).unwrap();
            let lowered = operator_of_gates(&col.gates, n);
            let source = operator_of_gate(&gate, n);
            assert_equal_up_to_phase(&lowered, &source, phase, 1e-9, &format!("{gate:?}"));
        }
    }
}

#[test]
fn resource_report_counts_are_deterministic() {
    let mut circuit = Circuit::new(3);
    circuit.push(Gate::Hadamard { qubit: 0 }).unwrap();
    circuit
        .push(Gate::Diagonal {
            qubits: vec![0, 1],
            phases: vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
        })
        .unwrap();
    circuit.push(Gate::Qft { qubits: vec![0, 1, 2] }).unwrap();
    let a = resources(&circuit).unwrap();
    let b = resources(&circuit).unwrap();
    assert_eq!(a, b);
    assert!(a.depth <= a.total_gates);
    assert!(a.cnot_count <= a.total_gates);
    assert!(a.depth > 0);
}

#[test]
fn tally_matches_collector_for_a_lowered_circuit() {
    let mut circuit = Circuit::new(4);
    circuit.push(Gate::Hadamard { qubit: 2 }).unwrap();
    circuit
        .push(Gate::PhaseShift { qubit: 1, lambda: 0.9 }.controlled(3))
        .unwrap();
    circuit.push(Gate::InverseQft { qubits: vec![0, 1] }).unwrap();

    let mut tally = Tally::new(4);
    qhdc_synth::lower_circuit_exact(&circuit, &mut tally).unwrap();
    let mut col = Collector::default();
    qhdc_synth::lower_circuit_exact(&circuit, &mut col).unwrap();
    assert_eq!(tally.gates as usize, col.gates.len());
    let cnots = col.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count();
    assert_eq!(tally.cnots as usize, cnots);
}
