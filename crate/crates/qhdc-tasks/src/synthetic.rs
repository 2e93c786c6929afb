//! Synthetic 3-versus-6 stand-in data for offline runs: two digit-like
//! 4x4 templates rendered at 28x28 with seeded feature flips and pixel
//! jitter.

use rand::Rng;

use hdc_core::rng::{self, domain};

use crate::dataset::{Dataset, DatasetSource, Image, BLOCK, IMAGE_SIDE, N_FEATURES, POOLED_SIDE};
use crate::TaskError;

// Template features, pooled-grid row-major. Drawn to be visually digit-like
// while overlapping enough that flipped features cause real confusion.
const TEMPLATE_THREE: [u8; N_FEATURES] = [
    1, 1, 1, 1, //
    0, 0, 0, 1, //
    0, 1, 1, 1, //
    1, 1, 1, 1,
];
const TEMPLATE_SIX: [u8; N_FEATURES] = [
    0, 1, 1, 1, //
    1, 0, 0, 0, //
    1, 1, 1, 1, //
    1, 1, 1, 1,
];

/// Noise knobs. `feature_flip` is the per-feature flip probability (the
/// class-internal variation); `pixel_jitter` is the amplitude of uniform
/// grayscale noise, small enough that pooled block means never cross the 0.5
/// threshold on their own.
#[derive(Debug, Clone, Copy)]
pub struct SyntheticNoise {
    pub feature_flip: f64,
    pub pixel_jitter: f64,
}

impl Default for SyntheticNoise {
    fn default() -> Self {
        Self { feature_flip: 0.15, pixel_jitter: 0.35 }
    }
}

impl SyntheticNoise {
    pub fn noiseless() -> Self {
        Self { feature_flip: 0.0, pixel_jitter: 0.0 }
    }
}

/// Deterministic synthetic dataset with the default noise level.
pub fn synthetic_dataset(seed: u64, per_class: usize) -> Result<Dataset, TaskError> {
    synthetic_dataset_with_noise(seed, per_class, SyntheticNoise::default())
}

pub fn synthetic_dataset_with_noise(
    seed: u64,
    per_class: usize,
    noise: SyntheticNoise,
) -> Result<Dataset, TaskError> {
    if per_class == 0 {
        return Err(TaskError::invalid("per_class must be >= 1"));
    }
    let mut images = Vec::with_capacity(2 * per_class);
    for (class_idx, (label, template)) in
        [(3u8, TEMPLATE_THREE), (6u8, TEMPLATE_SIX)].into_iter().enumerate()
    {
        for i in 0..per_class {
            let sample_index = (class_idx * per_class + i) as u64;
            let mut sample_rng = rng::stream(seed, domain::SAMPLE, sample_index);
            let mut features = template;
            if noise.feature_flip > 0.0 {
                for f in features.iter_mut() {
                    if sample_rng.gen_bool(noise.feature_flip) {
                        *f ^= 1;
                    }
                }
            }
            images.push(Image {
                pixels: render(&features, noise.pixel_jitter, &mut sample_rng),
                label,
            });
        }
    }
    Ok(Dataset { images, source: DatasetSource::Synthetic })
}

fn render(features: &[u8; N_FEATURES], jitter: f64, rng: &mut impl Rng) -> Vec<f64> {
    let mut pixels = vec![0.0; IMAGE_SIDE * IMAGE_SIDE];
    for by in 0..POOLED_SIDE {
        for bx in 0..POOLED_SIDE {
            let lit = features[by * POOLED_SIDE + bx] == 1;
            for dy in 0..BLOCK {
                for dx in 0..BLOCK {
                    let value = if jitter > 0.0 {
                        let u: f64 = rng.gen::<f64>() * jitter;
                        if lit { 1.0 - u } else { u }
                    } else if lit {
                        1.0
                    } else {
                        0.0
                    };
                    pixels[(by * BLOCK + dy) * IMAGE_SIDE + (bx * BLOCK + dx)] = value;
                }
            }
        }
    }
    pixels
}
