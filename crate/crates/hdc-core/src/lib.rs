//! Classical hyperdimensional computing with the MAP (Multiply-Add-Permute) model.
//!
//! Hypervectors are bipolar (components in {+1, -1}). Binding is element-wise
//! multiplication, bundling is element-wise integer addition (with an optional
//! sign-threshold normalization step), permutation is a cyclic shift, and
//! similarity is the cosine. Everything is deterministic given a seed.

mod codebook;
mod error;
mod prototype;
pub mod rng;
mod vector;

pub use codebook::Codebook;
pub use error::HdcError;
pub use prototype::PrototypeSet;
pub use vector::{
    bind, bundle, cosine, sign_normalize, BipolarHypervector, BundleVector, Components,
};

/// Minimum hypervector dimensionality accepted by generators.
pub const MIN_DIM: usize = 2;
