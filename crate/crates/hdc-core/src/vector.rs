//! Bipolar hypervectors and the MAP operations.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{HdcError, MIN_DIM};

/// A bipolar hypervector: every component is +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipolarHypervector {
    components: Vec<i8>,
}

/// An unnormalized bundle: the raw element-wise integer sum of bipolar
/// hypervectors (and differences thereof, during retraining).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleVector {
    components: Vec<i64>,
}

/// Read access to vector components as reals, shared by similarity and
/// encoding code that does not care about the concrete integer type.
pub trait Components {
    fn dim(&self) -> usize;
    fn component(&self, i: usize) -> f64;

    fn squared_norm(&self) -> f64 {
        (0..self.dim()).map(|i| self.component(i).powi(2)).sum()
    }
}

impl BipolarHypervector {
    /// Build from components, validating the bipolar invariant.
    pub fn new(components: Vec<i8>) -> Result<Self, HdcError> {
        if components.len() < MIN_DIM {
            return Err(HdcError::InvalidDimension(components.len()));
        }
        debug_assert!(components.iter().all(|&c| c == 1 || c == -1));
        if components.iter().any(|&c| c != 1 && c != -1) {
            return Err(HdcError::InvalidDimension(components.len()));
        }
        Ok(Self { components })
    }

    /// Draw a random hypervector, each component independently +/-1.
    pub fn random(dim: usize, rng: &mut impl Rng) -> Result<Self, HdcError> {
        if dim < MIN_DIM {
            return Err(HdcError::InvalidDimension(dim));
        }
        let components = (0..dim)
            .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        Ok(Self { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[i8] {
        &self.components
    }

    /// Cyclic shift: component i moves to position (i + shift) mod D.
    /// Negative shifts move content the other way; `shift` is reduced mod D.
    pub fn permute(&self, shift: i64) -> Self {
        Self {
            components: rotate(&self.components, shift),
        }
    }

    /// View as a raw bundle (all weights one).
    pub fn to_bundle(&self) -> BundleVector {
        BundleVector {
            components: self.components.iter().map(|&c| c as i64).collect(),
        }
    }
}

impl BundleVector {
    pub fn new(components: Vec<i64>) -> Self {
        Self { components }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            components: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    pub fn permute(&self, shift: i64) -> Self {
        Self {
            components: rotate(&self.components, shift),
        }
    }

    /// In-place element-wise addition.
    pub fn add_assign(&mut self, other: &BundleVector) -> Result<(), HdcError> {
        check_dims(self.dim(), other.dim())?;
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a += b;
        }
        Ok(())
    }

    /// In-place element-wise subtraction.
    pub fn sub_assign(&mut self, other: &BundleVector) -> Result<(), HdcError> {
        check_dims(self.dim(), other.dim())?;
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a -= b;
        }
        Ok(())
    }

    /// Root mean square of the components.
    pub fn rms(&self) -> f64 {
        (self.squared_norm() / self.dim() as f64).sqrt()
    }
}

impl Components for BipolarHypervector {
    fn dim(&self) -> usize {
        self.components.len()
    }
    fn component(&self, i: usize) -> f64 {
        self.components[i] as f64
    }
}

impl Components for BundleVector {
    fn dim(&self) -> usize {
        self.components.len()
    }
    fn component(&self, i: usize) -> f64 {
        self.components[i] as f64
    }
}

fn rotate<T: Copy>(v: &[T], shift: i64) -> Vec<T> {
    let d = v.len() as i64;
    let s = shift.rem_euclid(d) as usize;
    let mut out = v.to_vec();
    out.rotate_right(s);
    out
}

fn check_dims(a: usize, b: usize) -> Result<(), HdcError> {
    if a == b {
        Ok(())
    } else {
        Err(HdcError::DimensionMismatch(a, b))
    }
}

/// MAP binding: element-wise product. Self-inverse for bipolar vectors.
pub fn bind(
    a: &BipolarHypervector,
    b: &BipolarHypervector,
) -> Result<BipolarHypervector, HdcError> {
    check_dims(a.dim(), b.dim())?;
    let components = a
        .components
        .iter()
        .zip(&b.components)
        .map(|(&x, &y)| x * y)
        .collect();
    Ok(BipolarHypervector { components })
}

/// MAP bundling: raw element-wise integer sum, no thresholding.
pub fn bundle(vs: &[&BipolarHypervector]) -> Result<BundleVector, HdcError> {
    let first = vs.first().ok_or(HdcError::EmptyInput)?;
    let dim = first.dim();
    let mut sum = vec![0i64; dim];
    for v in vs {
        check_dims(dim, v.dim())?;
        for (s, &c) in sum.iter_mut().zip(v.components()) {
            *s += c as i64;
        }
    }
    Ok(BundleVector { components: sum })
}

/// Threshold a raw bundle back to a bipolar vector. Zeros map to +1; the tie
/// rule is fixed so reruns are bit-identical.
pub fn sign_normalize(s: &BundleVector) -> BipolarHypervector {
    let components = s
        .components
        .iter()
        .map(|&c| if c >= 0 { 1i8 } else { -1i8 })
        .collect();
    BipolarHypervector { components }
}

/// Cosine similarity between any two component vectors.
pub fn cosine<A: Components + ?Sized, B: Components + ?Sized>(
    a: &A,
    b: &B,
) -> Result<f64, HdcError> {
    check_dims(a.dim(), b.dim())?;
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for i in 0..a.dim() {
        let (x, y) = (a.component(i), b.component(i));
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Err(HdcError::UndefinedSimilarity);
    }
    Ok(dot / (na.sqrt() * nb.sqrt()))
}
