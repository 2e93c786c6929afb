//! Bundling as a linear combination of unitaries plus oblivious amplitude
//! amplification.
//!
//! PREP rotates an m = ceil(log2 K) ancilla register into sqrt(w_k) weights,
//! SELECT applies U_k controlled on ancilla value k, and PREP-dagger
//! uncomputes. The weighted sum of the prepared states then sits in the
//! ancilla-zero block with success amplitude alpha; OAA rounds
//! Q = -A S0 A^dag S_psi boost it following sin^2((2r+1) asin alpha).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statevector_sim::{Circuit, Complex, Gate, QubitRole, Statevector, UnitaryMatrix};

use crate::prep::complete_to_unitary;
use crate::{QhdcError, StatePrep};

/// Round-estimation and amplification knobs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OaaConfig {
    /// Skip amplification when alpha^2 already reaches this probability.
    pub success_threshold: f64,
    /// Hard clamp on the number of rounds.
    pub max_rounds: u32,
}

impl Default for OaaConfig {
    fn default() -> Self {
        Self { success_threshold: 0.9, max_rounds: 10 }
    }
}

/// Deliberate corruptions for self-test mutation checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Corrupt the S0 sign: the -1 phase on |0...0> degrades to +1, turning
    /// the reflection into the identity.
    CorruptS0,
}

/// A constructed LCU bundling plan over K preparations.
#[derive(Debug, Clone)]
pub struct LcuBundlePlan {
    unitaries: Vec<StatePrep>,
    weights: Vec<f64>,
    m: usize,
    n_system: usize,
    prep_unitary: UnitaryMatrix,
    a_circuit: Circuit,
    alpha: f64,
    rounds: u32,
    max_rounds: u32,
}

impl LcuBundlePlan {
    pub fn k(&self) -> usize {
        self.unitaries.len()
    }

    pub fn ancilla_count(&self) -> usize {
        self.m
    }

    pub fn n_system(&self) -> usize {
        self.n_system
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    pub fn max_rounds(&self) -> u32 {
        self.max_rounds
    }

    pub fn prep_unitary(&self) -> &UnitaryMatrix {
        &self.prep_unitary
    }

    /// The full A = PREP-dagger . SELECT . PREP circuit over system + ancilla.
    pub fn a_circuit(&self) -> &Circuit {
        &self.a_circuit
    }

    pub fn ancilla_qubits(&self) -> Vec<usize> {
        (self.n_system..self.n_system + self.m).collect()
    }

    /// Override the round count (clamped to the plan's maximum).
    pub fn with_rounds(mut self, rounds: u32) -> Self {
        self.rounds = rounds.min(self.max_rounds);
        self
    }
}

/// Build the LCU plan: construct A, simulate it once, and record the success
/// amplitude alpha together with the estimated round count.
pub fn lcu_prepare(
    unitaries: Vec<StatePrep>,
    weights: Option<Vec<f64>>,
    config: &OaaConfig,
) -> Result<LcuBundlePlan, QhdcError> {
    let k = unitaries.len();
    if k == 0 {
        return Err(QhdcError::invalid("LCU needs at least one unitary"));
    }
    let n_system = unitaries[0].n_qubits();
    for u in &unitaries {
        if u.n_qubits() != n_system {
            return Err(QhdcError::DimensionMismatch(n_system, u.n_qubits()));
        }
    }
    let weights = match weights {
        Some(w) => {
            if w.len() != k {
                return Err(QhdcError::invalid("one weight per unitary required"));
            }
            if w.iter().any(|&x| x < 0.0) {
                return Err(QhdcError::invalid("weights must be nonnegative"));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(QhdcError::invalid(format!(
                    "weights must sum to 1 (got {total})"
                )));
            }
            w
        }
        None => vec![1.0 / k as f64; k],
    };

    let m = if k == 1 { 0 } else { (k as f64).log2().ceil() as usize };
    let n_total = n_system + m;
    if n_total > statevector_sim::register_cap() {
        return Err(QhdcError::Sim(statevector_sim::SimError::ResourceLimit {
            requested: n_total,
            cap: statevector_sim::register_cap(),
        }));
    }

    // PREP: first column sqrt(w_k), zero-padded, completed deterministically.
    let prep_dim = 1usize << m;
    let mut first_column = vec![Complex64::default(); prep_dim];
    for (i, &w) in weights.iter().enumerate() {
        first_column[i] = Complex64::new(w.sqrt(), 0.0);
    }
    let prep_unitary = complete_to_unitary(&first_column)?;

    let a_circuit = build_a_circuit(&unitaries, &prep_unitary, n_system, m)?;

    let mut state = Statevector::zero(n_total)?;
    state.apply_circuit(&a_circuit)?;
    let anc: Vec<usize> = (n_system..n_total).collect();
    let p0 = state.outcome_probability(&anc, &vec![false; m]);
    let alpha = p0.max(0.0).sqrt();

    let rounds = if alpha > 0.0 { estimate_rounds(alpha, config)? } else { 0 };

    Ok(LcuBundlePlan {
        unitaries,
        weights,
        m,
        n_system,
        prep_unitary,
        a_circuit,
        alpha,
        rounds,
        max_rounds: config.max_rounds,
    })
}

fn build_a_circuit(
    unitaries: &[StatePrep],
    prep_unitary: &UnitaryMatrix,
    n_system: usize,
    m: usize,
) -> Result<Circuit, QhdcError> {
    let n_total = n_system + m;
    let mut circuit = Circuit::new(n_total);
    for q in n_system..n_total {
        circuit.set_role(q, QubitRole::Ancilla);
    }
    let anc: Vec<usize> = (n_system..n_total).collect();
    if m == 0 {
        // Single unitary: A is just U_0.
        for gate in unitaries[0].circuit().gates() {
            circuit.push(gate.clone())?;
        }
        return Ok(circuit);
    }
    circuit.push(Gate::Unitary { qubits: anc.clone(), matrix: prep_unitary.clone() })?;
    for (k, u) in unitaries.iter().enumerate() {
        let values: Vec<bool> = (0..m).map(|b| k >> b & 1 == 1).collect();
        for gate in u.circuit().gates() {
            circuit.push(gate.clone().controlled_on(anc.clone(), values.clone()))?;
        }
    }
    circuit.push(Gate::Unitary { qubits: anc.clone(), matrix: prep_unitary.dagger() })?;
    Ok(circuit)
}

/// Estimate the OAA round count for a measured success amplitude.
///
/// With theta = asin(alpha), the closed-form estimate is
/// r_est = floor(pi / (4 theta) - 1/2); candidates r in [r_est - 2, r_est + 2]
/// are scored by the predicted success sin^2((2r+1) theta). The smallest
/// candidate reaching the success threshold wins (rounds are depth, so fewer
/// is better); if none reaches it, the best-scoring candidate does. The
/// result is clamped to `max_rounds`.
pub fn estimate_rounds(alpha: f64, config: &OaaConfig) -> Result<u32, QhdcError> {
    if !(0.0..=1.0 + 1e-12).contains(&alpha) {
        return Err(QhdcError::invalid(format!("alpha {alpha} outside [0, 1]")));
    }
    let alpha = alpha.min(1.0);
    if alpha * alpha >= config.success_threshold {
        return Ok(0);
    }
    if alpha == 0.0 {
        // No rotation can leave the junk subspace.
        return Ok(0);
    }
    let theta = alpha.asin();
    let raw = std::f64::consts::PI / (4.0 * theta) - 0.5;
    let r_est = raw.max(0.0).floor() as i64;
    let lo = (r_est - 2).max(0) as u32;
    let hi = (r_est + 2) as u32;
    let predicted = |r: u32| {
        let angle = (2.0 * r as f64 + 1.0) * theta;
        angle.sin().powi(2)
    };
    let mut chosen = None;
    for r in lo..=hi {
        if predicted(r) >= config.success_threshold {
            chosen = Some(r);
            break;
        }
    }
    let r = chosen.unwrap_or_else(|| {
        let mut best = lo;
        for r in lo..=hi {
            if predicted(r) > predicted(best) + 1e-15 {
                best = r;
            }
        }
        best
    });
    Ok(r.min(config.max_rounds))
}

/// Run `plan.rounds()` OAA iterations on A|0...0> and report the final state
/// together with the ancilla-zero success probability.
pub fn oaa_amplify(plan: &LcuBundlePlan) -> Result<(Statevector, f64), QhdcError> {
    oaa_amplify_with_fault(plan, Fault::None)
}

/// Amplification with an optional deliberate fault, used by the self-test
/// suite to prove the Grover-angle check actually bites.
pub fn oaa_amplify_with_fault(
    plan: &LcuBundlePlan,
    fault: Fault,
) -> Result<(Statevector, f64), QhdcError> {
    let n_total = plan.n_system + plan.m;
    let anc = plan.ancilla_qubits();
    let a_dagger = plan.a_circuit.adjoint();

    let mut state = Statevector::zero(n_total)?;
    state.apply_circuit(&plan.a_circuit)?;

    for _ in 0..plan.rounds {
        // Q = -A S0 A^dag S_psi, applied right to left.
        reflect_ancilla_zero(&mut state, &anc);
        state.apply_circuit(&a_dagger)?;
        reflect_all_zero(&mut state, fault);
        state.apply_circuit(&plan.a_circuit)?;
        negate(&mut state);
    }

    let success = state.outcome_probability(&anc, &vec![false; plan.m]);
    Ok((state, success))
}

/// S_psi: phase -1 exactly on the ancilla-zero subspace.
fn reflect_ancilla_zero(state: &mut Statevector, ancillas: &[usize]) {
    let mask: usize = ancillas.iter().map(|&q| 1usize << q).sum();
    let amps = state.amplitudes().to_vec();
    let flipped: Vec<Complex> = amps
        .iter()
        .enumerate()
        .map(|(i, a)| if i & mask == 0 { -a } else { *a })
        .collect();
    *state = Statevector::from_amplitudes(flipped).expect("reflection preserves norm");
}

/// S0: phase -1 on the all-zero basis state of the full register.
fn reflect_all_zero(state: &mut Statevector, fault: Fault) {
    if fault == Fault::CorruptS0 {
        return;
    }
    let mut amps = state.amplitudes().to_vec();
    amps[0] = -amps[0];
    *state = Statevector::from_amplitudes(amps).expect("reflection preserves norm");
}

fn negate(state: &mut Statevector) {
    let amps = state.amplitudes().iter().map(|a| -a).collect();
    *state = Statevector::from_amplitudes(amps).expect("negation preserves norm");
}

/// Diagnostics reported alongside a bundled state.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BundleDiagnostics {
    pub k: usize,
    pub ancillas: usize,
    pub alpha: f64,
    pub rounds: u32,
    pub success_probability: f64,
}

/// A bundled preparation plus its diagnostics.
#[derive(Debug, Clone)]
pub struct BundleOutput {
    pub prep: StatePrep,
    pub state: Statevector,
    pub diagnostics: BundleDiagnostics,
}

/// End-to-end bundling: LCU, round estimation, OAA, ancilla-zero projection.
/// The returned preparation produces the normalized coherent sum of the
/// input states.
pub fn bundle_states(
    unitaries: Vec<StatePrep>,
    weights: Option<Vec<f64>>,
    config: &OaaConfig,
) -> Result<BundleOutput, QhdcError> {
    let plan = lcu_prepare(unitaries, weights, config)?;
    if plan.alpha < 1e-9 {
        return Err(QhdcError::Cancellation);
    }
    let (mut state, success) = oaa_amplify(&plan)?;
    let anc = plan.ancilla_qubits();
    state.project(&anc, &vec![false; plan.m])?;
    let mut system_state = state.trace_out_zeroed(&anc)?;

    // The OAA rotation leaves the target-axis component with coefficient
    // sin((2r+1) theta); when that lands negative the projected state is the
    // negated sum, so strip the known parity to keep similarity signs honest.
    let theta = plan.alpha.asin();
    if ((2.0 * plan.rounds as f64 + 1.0) * theta).sin() < 0.0 {
        let amps = system_state.amplitudes().iter().map(|a| -a).collect();
        system_state = Statevector::from_amplitudes(amps).expect("negation preserves norm");
    }

    let prep = StatePrep::from_state(&system_state)?;
    Ok(BundleOutput {
        prep,
        state: system_state,
        diagnostics: BundleDiagnostics {
            k: plan.k(),
            ancillas: plan.m,
            alpha: plan.alpha,
            rounds: plan.rounds,
            success_probability: success,
        },
    })
}

/// Reference bundling path: simulate each preparation, sum amplitudes with
/// the given weights and normalize. This is the independent oracle the tests
/// compare the LCU+OAA pipeline against; production code must not use it.
pub fn reference_bundle(
    unitaries: &[StatePrep],
    weights: Option<&[f64]>,
) -> Result<Statevector, QhdcError> {
    if unitaries.is_empty() {
        return Err(QhdcError::invalid("reference bundle needs inputs"));
    }
    let k = unitaries.len();
    let dim = unitaries[0].dim();
    let mut sum = vec![Complex::default(); dim];
    for (i, u) in unitaries.iter().enumerate() {
        let w = weights.map_or(1.0 / k as f64, |w| w[i]);
        let s = u.simulate()?;
        for (acc, a) in sum.iter_mut().zip(s.amplitudes()) {
            *acc += w * a;
        }
    }
    let norm = sum.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-9 {
        return Err(QhdcError::Cancellation);
    }
    for a in &mut sum {
        *a /= norm;
    }
    Ok(Statevector::from_amplitudes(sum)?)
}
