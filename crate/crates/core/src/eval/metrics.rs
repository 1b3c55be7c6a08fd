use serde::{Deserialize, Serialize};

use super::EvalError;

/// Expert (label 1) is the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn from_predictions(labels: &[u8], predicted: &[u8]) -> ConfusionMatrix {
        let mut cm = ConfusionMatrix::default();
        for (&y, &p) in labels.iter().zip(predicted) {
            match (y, p) {
                (1, 1) => cm.tp += 1,
                (0, 1) => cm.fp += 1,
                (0, 0) => cm.tn += 1,
                _ => cm.fn_ += 1,
            }
        }
        cm
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub acc: f64,
    pub f1: f64,
    pub precision: f64,
    pub recall: f64,
    pub auc: f64,
    /// No positive predictions; precision reported as 0.
    pub precision_undefined: bool,
    /// No positive rows; recall reported as 0.
    pub recall_undefined: bool,
}

/// Acc, precision, recall and F1 from counts; AUC left at NaN.
pub fn count_metrics(cm: &ConfusionMatrix) -> Metrics {
    let ratio = |num: usize, den: usize| if den == 0 { (0.0, true) } else { (num as f64 / den as f64, false) };
    let (acc, _) = ratio(cm.tp + cm.tn, cm.total());
    let (precision, pu) = ratio(cm.tp, cm.tp + cm.fp);
    let (recall, ru) = ratio(cm.tp, cm.tp + cm.fn_);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Metrics {
        acc,
        f1,
        precision,
        recall,
        auc: f64::NAN,
        precision_undefined: pu,
        recall_undefined: ru,
    }
}

/// Pairwise AUC: share of (positive, negative) pairs where the positive
/// scores higher, ties counting one half.
pub fn pairwise_auc(labels: &[u8], scores: &[f64]) -> Result<f64, EvalError> {
    let pos: Vec<f64> = labels.iter().zip(scores).filter(|(l, _)| **l == 1).map(|(_, s)| *s).collect();
    let neg: Vec<f64> = labels.iter().zip(scores).filter(|(l, _)| **l == 0).map(|(_, s)| *s).collect();
    if pos.is_empty() || neg.is_empty() {
        return Err(EvalError::SingleClass);
    }
    // Twice the count so ties stay integral.
    let mut twice: u64 = 0;
    for p in &pos {
        for q in &neg {
            twice += if p > q {
                2
            } else if p == q {
                1
            } else {
                0
            };
        }
    }
    Ok(twice as f64 / (2 * pos.len() * neg.len()) as f64)
}

pub fn metrics(cm: &ConfusionMatrix, labels: &[u8], scores: &[f64]) -> Result<Metrics, EvalError> {
    let mut m = count_metrics(cm);
    m.auc = pairwise_auc(labels, scores)?;
    Ok(m)
}
