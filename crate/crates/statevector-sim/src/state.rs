//! The statevector and its gate-application kernels.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::gate::single_qubit_matrix;
use crate::{register_cap, Circuit, Complex, Gate, SimError, NORM_TOL};

/// Activation condition for (possibly controlled) kernels: the gate acts on
/// basis index `i` iff `i & mask == value`.
#[derive(Clone, Copy, Debug, Default)]
struct ControlMask {
    mask: usize,
    value: usize,
}

impl ControlMask {
    fn matches(&self, index: usize) -> bool {
        index & self.mask == self.value
    }

    fn with(&self, controls: &[usize], values: &[bool]) -> Result<Self, SimError> {
        let mut mask = self.mask;
        let mut value = self.value;
        for (&q, &v) in controls.iter().zip(values) {
            let bit = 1usize << q;
            if mask & bit != 0 && (value & bit != 0) != v {
                return Err(SimError::invalid(
                    "nested controls require conflicting values on one qubit",
                ));
            }
            mask |= bit;
            if v {
                value |= bit;
            }
        }
        Ok(Self { mask, value })
    }
}

/// A normalized pure state over `n` qubits as 2^n complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    amps: Vec<Complex>,
    n_qubits: usize,
}

impl Statevector {
    /// The all-zero basis state |0...0>.
    pub fn zero(n_qubits: usize) -> Result<Self, SimError> {
        let cap = register_cap();
        if n_qubits == 0 || n_qubits > cap {
            return Err(SimError::ResourceLimit { requested: n_qubits, cap });
        }
        let mut amps = vec![Complex::default(); 1 << n_qubits];
        amps[0] = Complex::new(1.0, 0.0);
        Ok(Self { amps, n_qubits })
    }

    /// Wrap explicit amplitudes; must have power-of-two length and unit norm.
    pub fn from_amplitudes(amps: Vec<Complex>) -> Result<Self, SimError> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(SimError::invalid("amplitude count must be a power of two"));
        }
        let n_qubits = amps.len().trailing_zeros() as usize;
        let state = Self { amps, n_qubits };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(SimError::invalid(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Apply one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        gate.validate(self.n_qubits)?;
        self.apply_masked(gate, ControlMask::default())
    }

    /// Apply a circuit's gates in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(SimError::DimensionMismatch(circuit.n_qubits(), self.n_qubits));
        }
        for gate in circuit.gates() {
            self.apply(gate)?;
        }
        Ok(())
    }

    /// Apply a circuit defined over fewer qubits to the low `circuit.n_qubits()`
    /// qubits of this register, identity on the rest.
    pub fn apply_embedded(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.n_qubits() > self.n_qubits {
            return Err(SimError::DimensionMismatch(circuit.n_qubits(), self.n_qubits));
        }
        for gate in circuit.gates() {
            gate.validate(circuit.n_qubits())?;
            self.apply_masked(gate, ControlMask::default())?;
        }
        Ok(())
    }

    fn apply_masked(&mut self, gate: &Gate, ctrl: ControlMask) -> Result<(), SimError> {
        match gate {
            Gate::Hadamard { qubit }
            | Gate::PauliX { qubit }
            | Gate::PhaseShift { qubit, .. }
            | Gate::RotationX { qubit, .. }
            | Gate::RotationY { qubit, .. }
            | Gate::RotationZ { qubit, .. } => {
                let m = single_qubit_matrix(gate).expect("single-qubit kind");
                self.kernel_single(*qubit, m, ctrl);
                Ok(())
            }
            Gate::Cnot { control, target } => {
                self.kernel_cnot(*control, *target, ctrl);
                Ok(())
            }
            Gate::Diagonal { qubits, phases } => {
                self.kernel_diagonal(qubits, phases, ctrl);
                Ok(())
            }
            Gate::Qft { qubits } => self.kernel_qft(qubits, false, ctrl),
            Gate::InverseQft { qubits } => self.kernel_qft(qubits, true, ctrl),
            Gate::Unitary { qubits, matrix } => {
                self.kernel_unitary(qubits, matrix.dim(), matrix.elements(), ctrl);
                Ok(())
            }
            Gate::Controlled { gate, controls, values } => {
                let merged = ctrl.with(controls, values)?;
                self.apply_masked(gate, merged)
            }
        }
    }

    fn kernel_single(&mut self, qubit: usize, m: [Complex; 4], ctrl: ControlMask) {
        let bit = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & bit != 0 || !ctrl.matches(i) {
                continue;
            }
            let j = i | bit;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            self.amps[i] = m[0] * a0 + m[1] * a1;
            self.amps[j] = m[2] * a0 + m[3] * a1;
        }
    }

    fn kernel_cnot(&mut self, control: usize, target: usize, ctrl: ControlMask) {
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cbit == 0 || i & tbit != 0 || !ctrl.matches(i) {
                continue;
            }
            self.amps.swap(i, i | tbit);
        }
    }

    fn kernel_diagonal(&mut self, qubits: &[usize], phases: &[Complex], ctrl: ControlMask) {
        for i in 0..self.amps.len() {
            if !ctrl.matches(i) {
                continue;
            }
            let sub = extract_sub_index(i, qubits);
            self.amps[i] *= phases[sub];
        }
    }

    fn kernel_unitary(
        &mut self,
        qubits: &[usize],
        dim: usize,
        elements: &[Complex],
        ctrl: ControlMask,
    ) {
        let offsets = sub_offsets(qubits);
        let mut gathered = vec![Complex::default(); dim];
        let mut out = vec![Complex::default(); dim];
        for base in rest_indices(self.n_qubits, qubits) {
            if !ctrl.matches(base) {
                continue;
            }
            for (j, &off) in offsets.iter().enumerate() {
                gathered[j] = self.amps[base + off];
            }
            for (r, slot) in out.iter_mut().enumerate() {
                let row = &elements[r * dim..(r + 1) * dim];
                *slot = row
                    .iter()
                    .zip(&gathered)
                    .map(|(m, a)| m * a)
                    .sum::<Complex>();
            }
            for (j, &off) in offsets.iter().enumerate() {
                self.amps[base + off] = out[j];
            }
        }
    }

    /// QFT over the selected qubits: |j> -> (1/sqrt(D)) sum_k e^{+i 2 pi jk/D} |k>,
    /// with qubits[0] the least-significant bit of the sub-index. The inverse
    /// conjugates the exponent.
    fn kernel_qft(
        &mut self,
        qubits: &[usize],
        inverse: bool,
        ctrl: ControlMask,
    ) -> Result<(), SimError> {
        for &q in qubits {
            if ctrl.mask & (1 << q) != 0 {
                return Err(SimError::invalid("QFT qubits overlap its control set"));
            }
        }
        let dim = 1usize << qubits.len();
        let mut planner = FftPlanner::<f64>::new();
        // rustfft's unnormalized inverse transform carries the e^{+i 2 pi jk/D}
        // kernel that the QFT needs; the forward transform gives the inverse QFT.
        let fft = if inverse {
            planner.plan_fft_forward(dim)
        } else {
            planner.plan_fft_inverse(dim)
        };
        let scale = 1.0 / (dim as f64).sqrt();
        let offsets = sub_offsets(qubits);
        let mut buf = vec![Complex64::default(); dim];
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        for base in rest_indices(self.n_qubits, qubits) {
            if !ctrl.matches(base) {
                continue;
            }
            for (j, &off) in offsets.iter().enumerate() {
                buf[j] = self.amps[base + off];
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for (j, &off) in offsets.iter().enumerate() {
                self.amps[base + off] = buf[j] * scale;
            }
        }
        Ok(())
    }

    /// <self|other>.
    pub fn inner_product(&self, other: &Statevector) -> Result<Complex, SimError> {
        if self.n_qubits != other.n_qubits {
            return Err(SimError::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability that measuring `qubits` yields `outcome`.
    pub fn outcome_probability(&self, qubits: &[usize], outcome: &[bool]) -> f64 {
        let (mask, value) = outcome_mask(qubits, outcome);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == value)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Project onto a measurement outcome and renormalize. Returns the
    /// outcome's probability; zero-probability outcomes are an error.
    pub fn project(&mut self, qubits: &[usize], outcome: &[bool]) -> Result<f64, SimError> {
        let (mask, value) = outcome_mask(qubits, outcome);
        let prob = self.outcome_probability(qubits, outcome);
        if prob <= 1e-12 {
            return Err(SimError::ImpossibleOutcome);
        }
        let scale = 1.0 / prob.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == value {
                *a *= scale;
            } else {
                *a = Complex::default();
            }
        }
        Ok(prob)
    }

    /// Marginal distribution over the listed qubits; entry `s` is the
    /// probability of the sub-outcome whose bit b is qubits[b]'s value.
    pub fn marginal_probabilities(&self, qubits: &[usize]) -> Vec<f64> {
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            probs[extract_sub_index(i, qubits)] += a.norm_sqr();
        }
        probs
    }

    /// Keep only amplitudes where `qubits` are all zero (after projecting)
    /// and return the reduced state over the remaining qubits, low-to-high.
    pub fn trace_out_zeroed(&self, qubits: &[usize]) -> Result<Statevector, SimError> {
        let rest: Vec<usize> = (0..self.n_qubits).filter(|q| !qubits.contains(q)).collect();
        let zero_mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let mut amps = vec![Complex::default(); 1 << rest.len()];
        for (i, a) in self.amps.iter().enumerate() {
            if i & zero_mask == 0 {
                amps[extract_sub_index(i, &rest)] = *a;
            }
        }
        Statevector::from_amplitudes(amps)
    }
}

fn outcome_mask(qubits: &[usize], outcome: &[bool]) -> (usize, usize) {
    let mut mask = 0usize;
    let mut value = 0usize;
    for (&q, &b) in qubits.iter().zip(outcome) {
        mask |= 1 << q;
        if b {
            value |= 1 << q;
        }
    }
    (mask, value)
}

/// Sub-index of basis index `i` over an ordered qubit list.
pub(crate) fn extract_sub_index(i: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (b, &q)| acc | ((i >> q) & 1) << b)
}

/// Offset of each sub-index within the full register.
fn sub_offsets(qubits: &[usize]) -> Vec<usize> {
    (0..1usize << qubits.len())
        .map(|j| {
            qubits
                .iter()
                .enumerate()
                .fold(0, |acc, (b, &q)| acc | ((j >> b) & 1) << q)
        })
        .collect()
}

/// All basis indices whose selected-qubit bits are zero.
fn rest_indices(n_qubits: usize, qubits: &[usize]) -> impl Iterator<Item = usize> {
    let sel_mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let free: Vec<usize> = (0..n_qubits).filter(|q| sel_mask & (1 << q) == 0).collect();
    (0..1usize << free.len()).map(move |r| {
        free.iter()
            .enumerate()
            .fold(0, |acc, (b, &q)| acc | ((r >> b) & 1) << q)
    })
}
