//! Image datasets for the 3-versus-6 task and the preprocessing pipeline.

use serde::{Deserialize, Serialize};

use crate::TaskError;

pub const IMAGE_SIDE: usize = 28;
pub const POOLED_SIDE: usize = 4;
pub const BLOCK: usize = IMAGE_SIDE / POOLED_SIDE;
pub const N_FEATURES: usize = POOLED_SIDE * POOLED_SIDE;
pub const CLASS_LABELS: [u8; 2] = [3, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetSource {
    MnistIdx,
    Synthetic,
}

/// A grayscale image with pixels in [0, 1].
#[derive(Debug, Clone)]
pub struct Image {
    pub pixels: Vec<f64>,
    pub label: u8,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub images: Vec<Image>,
    pub source: DatasetSource,
}

/// A preprocessed sample: 16 binary features.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sample {
    pub features: [u8; N_FEATURES],
    pub label: u8,
}

/// Downscale one 28x28 image by mean-pooling over non-overlapping 7x7
/// blocks, then binarize at 0.5 (values >= 0.5 map to 1).
pub fn preprocess_image(pixels: &[f64]) -> Result<[u8; N_FEATURES], TaskError> {
    if pixels.len() != IMAGE_SIDE * IMAGE_SIDE {
        return Err(TaskError::invalid(format!(
            "expected a {IMAGE_SIDE}x{IMAGE_SIDE} image, got {} pixels",
            pixels.len()
        )));
    }
    let mut features = [0u8; N_FEATURES];
    for by in 0..POOLED_SIDE {
        for bx in 0..POOLED_SIDE {
            let mut sum = 0.0;
            for dy in 0..BLOCK {
                for dx in 0..BLOCK {
                    sum += pixels[(by * BLOCK + dy) * IMAGE_SIDE + (bx * BLOCK + dx)];
                }
            }
            let mean = sum / (BLOCK * BLOCK) as f64;
            features[by * POOLED_SIDE + bx] = u8::from(mean >= 0.5);
        }
    }
    Ok(features)
}

/// Preprocess every image; shuffling and subsampling happen at fold
/// construction so the pool is reusable across folds and modes.
pub fn preprocess(dataset: &Dataset) -> Result<Vec<Sample>, TaskError> {
    dataset
        .images
        .iter()
        .map(|img| {
            Ok(Sample {
                features: preprocess_image(&img.pixels)?,
                label: img.label,
            })
        })
        .collect()
}
