use serde::{Deserialize, Serialize};

use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    /// Rows scoring at or above this are called positive; infinite for (0, 0).
    pub threshold: f64,
}

/// ROC curve with the underlying counts, so the area can be taken in
/// integer arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct Roc {
    pub points: Vec<RocPoint>,
    /// (false positives, true positives) per point.
    pub counts: Vec<(usize, usize)>,
    pub n_pos: usize,
    pub n_neg: usize,
}

/// One point per distinct score, highest threshold first, plus (0, 0).
pub fn roc_curve(labels: &[u8], scores: &[f64]) -> Result<Roc, EvalError> {
    let n_pos = labels.iter().filter(|&&l| l == 1).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(EvalError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut points = vec![RocPoint {
        fpr: 0.0,
        tpr: 0.0,
        threshold: f64::INFINITY,
    }];
    let mut counts = vec![(0, 0)];
    let (mut fp, mut tp) = (0usize, 0usize);
    let mut k = 0;
    while k < order.len() {
        let s = scores[order[k]];
        while k < order.len() && scores[order[k]] == s {
            if labels[order[k]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            k += 1;
        }
        points.push(RocPoint {
            fpr: fp as f64 / n_neg as f64,
            tpr: tp as f64 / n_pos as f64,
            threshold: s,
        });
        counts.push((fp, tp));
    }
    Ok(Roc {
        points,
        counts,
        n_pos,
        n_neg,
    })
}

impl Roc {
    /// Trapezoidal area under the curve.
    pub fn area(&self) -> f64 {
        let twice: u64 = self
            .counts
            .windows(2)
            .map(|w| ((w[1].0 - w[0].0) * (w[0].1 + w[1].1)) as u64)
            .sum();
        twice as f64 / (2 * self.n_pos * self.n_neg) as f64
    }
}
