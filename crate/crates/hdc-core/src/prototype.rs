//! Class prototypes and the misclassification-driven retraining loop.

use serde::{Deserialize, Serialize};

use crate::{cosine, BundleVector, HdcError};

/// Per-class prototype vectors, ordered by class label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrototypeSet {
    labels: Vec<u32>,
    vectors: Vec<BundleVector>,
}

impl PrototypeSet {
    pub fn new(labels: Vec<u32>, vectors: Vec<BundleVector>) -> Result<Self, HdcError> {
        if labels.is_empty() || labels.len() != vectors.len() {
            return Err(HdcError::EmptyInput);
        }
        let dim = vectors[0].dim();
        for v in &vectors {
            if v.dim() != dim {
                return Err(HdcError::DimensionMismatch(dim, v.dim()));
            }
        }
        Ok(Self { labels, vectors })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn vectors(&self) -> &[BundleVector] {
        &self.vectors
    }

    pub fn vector_for(&self, label: u32) -> Option<&BundleVector> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| &self.vectors[i])
    }

    /// Predict by highest cosine; ties resolve to the lowest class label.
    pub fn classify(&self, sample: &BundleVector) -> Result<u32, HdcError> {
        let mut best: Option<(u32, f64)> = None;
        for (label, proto) in self.labels.iter().zip(&self.vectors) {
            let sim = cosine(sample, proto)?;
            best = match best {
                None => Some((*label, sim)),
                Some((bl, bs)) => {
                    if sim > bs || (sim == bs && *label < bl) {
                        Some((*label, sim))
                    } else {
                        Some((bl, bs))
                    }
                }
            };
        }
        Ok(best.expect("non-empty prototype set").0)
    }

    /// One retraining pass: every misclassified sample is subtracted from the
    /// wrongly predicted prototype and added to its true one. Returns the
    /// number of misclassifications seen during the pass.
    pub fn retrain_epoch(&mut self, samples: &[(BundleVector, u32)]) -> Result<usize, HdcError> {
        if samples.is_empty() {
            return Err(HdcError::EmptyInput);
        }
        let mut misses = 0;
        for (sample, truth) in samples {
            let predicted = self.classify(sample)?;
            if predicted != *truth {
                misses += 1;
                let wrong = self.index_of(predicted)?;
                let right = self.index_of(*truth)?;
                self.vectors[wrong].sub_assign(sample)?;
                self.vectors[right].add_assign(sample)?;
            }
        }
        Ok(misses)
    }

    fn index_of(&self, label: u32) -> Result<usize, HdcError> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(HdcError::EmptyInput)
    }
}
