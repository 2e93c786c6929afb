//! Classification metrics: confusion counts, weighted F1 and ROC AUC.

use serde::{Deserialize, Serialize};

/// 2x2 confusion counts; rows are true labels (3 then 6), columns predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 2]; 2],
}

impl ConfusionMatrix {
    pub fn record(&mut self, truth: u8, predicted: u8) {
        let r = usize::from(truth == 6);
        let c = usize::from(predicted == 6);
        self.counts[r][c] += 1;
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for r in 0..2 {
            for c in 0..2 {
                self.counts[r][c] += other.counts[r][c];
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

pub fn confusion_totals(m: &ConfusionMatrix) -> (u64, u64) {
    let correct = m.counts[0][0] + m.counts[1][1];
    (correct, m.total())
}

/// Weighted F1: per-class F1 weighted by class support.
pub fn weighted_f1(m: &ConfusionMatrix) -> f64 {
    let mut weighted = 0.0;
    let total = m.total() as f64;
    if total == 0.0 {
        return 0.0;
    }
    for class in 0..2 {
        let tp = m.counts[class][class] as f64;
        let fp = m.counts[1 - class][class] as f64;
        let fn_ = m.counts[class][1 - class] as f64;
        let support = (m.counts[class][0] + m.counts[class][1]) as f64;
        let f1 = if 2.0 * tp + fp + fn_ == 0.0 {
            0.0
        } else {
            2.0 * tp / (2.0 * tp + fp + fn_)
        };
        weighted += f1 * support / total;
    }
    weighted
}

/// ROC AUC from (score, is_positive) pairs via the rank statistic, with the
/// usual half-credit for ties.
pub fn auc_from_scores(scored: &[(f64, bool)]) -> f64 {
    let n_pos = scored.iter().filter(|(_, p)| *p).count();
    let n_neg = scored.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return 0.5;
    }
    let mut sorted: Vec<(f64, bool)> = scored.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Average ranks over tie groups.
    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j].0 == sorted[i].0 {
            j += 1;
        }
        let avg_rank = ((i + 1 + j) as f64) / 2.0; // ranks are 1-based
        for item in &sorted[i..j] {
            if item.1 {
                rank_sum_pos += avg_rank;
            }
        }
        i = j;
    }
    (rank_sum_pos - (n_pos * (n_pos + 1)) as f64 / 2.0) / (n_pos as f64 * n_neg as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_auc(scored: &[(f64, bool)]) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (sp, p) in scored.iter().filter(|(_, p)| *p) {
            for (sn, _) in scored.iter().filter(|(_, n)| !*n) {
                pairs += 1.0;
                if sp > sn {
                    wins += 1.0;
                } else if sp == sn {
                    wins += 0.5;
                }
            }
        }
        if pairs == 0.0 { 0.5 } else { wins / pairs }
    }

    #[test]
    fn perfect_classifier_scores_one() {
        let m = ConfusionMatrix { counts: [[25, 0], [0, 25]] };
        assert!((weighted_f1(&m) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f1_handles_imbalanced_errors() {
        let m = ConfusionMatrix { counts: [[20, 5], [2, 23]] };
        let f1_a = 2.0 * 20.0 / (2.0 * 20.0 + 2.0 + 5.0);
        let f1_b = 2.0 * 23.0 / (2.0 * 23.0 + 5.0 + 2.0);
        let expected = (f1_a * 25.0 + f1_b * 25.0) / 50.0;
        assert!((weighted_f1(&m) - expected).abs() < 1e-12);
    }

    #[test]
    fn rank_auc_matches_pairwise_auc_including_ties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let scored: Vec<(f64, bool)> = (0..50)
                .map(|_| {
                    // Quantized scores to force ties.
                    let s = (rng.gen::<f64>() * 10.0).round() / 10.0;
                    (s, rng.gen_bool(0.5))
                })
                .collect();
            let fast = auc_from_scores(&scored);
            let slow = brute_force_auc(&scored);
            assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
        }
    }

    #[test]
    fn auc_of_a_perfect_separator_is_one() {
        let scored = vec![(0.9, true), (0.8, true), (0.1, false), (0.2, false)];
        assert!((auc_from_scores(&scored) - 1.0).abs() < 1e-12);
    }
}
