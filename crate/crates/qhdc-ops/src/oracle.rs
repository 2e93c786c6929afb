//! Phase oracles: diagonal unitaries holding one hypervector.

use hdc_core::{BipolarHypervector, BundleVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::QhdcError;

/// A diagonal phase oracle over D = 2^n basis states. For bipolar encodings
/// the phases are exactly +/-1; RMS-encoded bundles carry arbitrary
/// unit-modulus phases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseOracle {
    phases: Vec<Complex64>,
}

impl PhaseOracle {
    /// Oracle with phase v_i on basis state |i>.
    pub fn from_bipolar(v: &BipolarHypervector) -> Result<Self, QhdcError> {
        let dim = v.dim();
        if !dim.is_power_of_two() {
            return Err(QhdcError::InvalidDimension(dim));
        }
        let phases = v
            .components()
            .iter()
            .map(|&c| Complex64::new(c as f64, 0.0))
            .collect();
        Ok(Self { phases })
    }

    /// Compose oracles by element-wise phase product: the quantum form of
    /// iterated binding.
    pub fn compose(oracles: &[&PhaseOracle]) -> Result<Self, QhdcError> {
        let first = oracles
            .first()
            .ok_or_else(|| QhdcError::invalid("compose needs at least one oracle"))?;
        let dim = first.dim();
        let mut phases = vec![Complex64::new(1.0, 0.0); dim];
        for o in oracles {
            if o.dim() != dim {
                return Err(QhdcError::DimensionMismatch(dim, o.dim()));
            }
            for (p, q) in phases.iter_mut().zip(&o.phases) {
                *p *= q;
            }
        }
        Ok(Self { phases })
    }

    /// RMS phase encoding of a real-valued bundle: phi_i = e^{i pi v_i / RMS}
    /// with RMS = sqrt(mean(v_i^2)). Signs survive as phase direction and
    /// relative magnitudes as phase angle; components with |v_i| = RMS land
    /// on -1 from either sign, which is inherent to the map.
    pub fn rms_from_bundle(v: &BundleVector) -> Result<Self, QhdcError> {
        if !v.dim().is_power_of_two() {
            return Err(QhdcError::InvalidDimension(v.dim()));
        }
        if v.is_zero() {
            return Err(QhdcError::DegenerateVector);
        }
        let rms = v.rms();
        let phases = v
            .components()
            .iter()
            .map(|&c| Complex64::from_polar(1.0, std::f64::consts::PI * c as f64 / rms))
            .collect();
        Ok(Self { phases })
    }

    pub fn from_phases(phases: Vec<Complex64>) -> Result<Self, QhdcError> {
        if !phases.len().is_power_of_two() || phases.is_empty() {
            return Err(QhdcError::InvalidDimension(phases.len()));
        }
        for p in &phases {
            if (p.norm() - 1.0).abs() > 1e-12 {
                return Err(QhdcError::invalid("oracle phases must have modulus 1"));
            }
        }
        Ok(Self { phases })
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.phases.len().trailing_zeros() as usize
    }

    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    /// Recover the bipolar vector if every phase is exactly +/-1.
    pub fn decode_bipolar(&self) -> Option<BipolarHypervector> {
        let mut cs = Vec::with_capacity(self.dim());
        for p in &self.phases {
            if (p - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
                cs.push(1i8);
            } else if (p + Complex64::new(1.0, 0.0)).norm() < 1e-12 {
                cs.push(-1i8);
            } else {
                return None;
            }
        }
        BipolarHypervector::new(cs).ok()
    }
}
