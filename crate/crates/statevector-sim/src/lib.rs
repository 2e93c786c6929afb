//! Dense statevector simulation of quantum circuits.
//!
//! Qubit 0 is the least-significant bit of the basis index everywhere; a
//! basis state `|q_{n-1} ... q_1 q_0>` has index `sum_j q_j * 2^j`. Gates are
//! applied in circuit order (first gate first), and controlled gates apply
//! the inner gate's full unitary, including its global phase, exactly on the
//! subspace where the control qubits match their required values.

mod circuit;
mod error;
mod gate;
mod sample;
mod state;

pub use circuit::{Circuit, QubitRole};
pub use error::SimError;
pub use gate::{Gate, UnitaryMatrix};
pub use sample::ShotResult;
pub use state::Statevector;

pub type Complex = num_complex::Complex64;

use std::sync::atomic::{AtomicUsize, Ordering};

/// Default cap on register width: a statevector of at most 2^16 amplitudes.
pub const DEFAULT_MAX_QUBITS: usize = 16;

static REGISTER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_QUBITS);

/// Current register-width cap.
pub fn register_cap() -> usize {
    REGISTER_CAP.load(Ordering::Relaxed)
}

/// Override the register-width cap process-wide (e.g. from an environment
/// variable at CLI startup).
pub fn set_register_cap(n_qubits: usize) {
    REGISTER_CAP.store(n_qubits, Ordering::Relaxed);
}

/// Tolerance for norm preservation checks.
pub const NORM_TOL: f64 = 1e-10;
/// Tolerance for unit-modulus checks on diagonal phases.
pub const PHASE_TOL: f64 = 1e-12;
