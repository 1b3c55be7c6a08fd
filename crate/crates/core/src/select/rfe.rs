//! Recursive feature elimination with a linear SVM.

use crate::models::svm::{train_svm, KernelChoice, SvmParams};
use crate::models::ModelError;

/// Elimination score per column: the column dropped in round `r` (1-based)
/// scores `r`; the last survivor scores `d`. Each round refits a linear
/// SVM (C = 1, z-scored inputs) on the survivors and drops the smallest
/// squared weight, the highest column index among equal weights.
pub fn svm_rfe_scores(rows: &[Vec<f64>], labels: &[u8]) -> Result<Vec<f64>, ModelError> {
    let d = rows.first().map_or(0, Vec::len);
    let mut scores = vec![0.0; d];
    let mut alive: Vec<usize> = (0..d).collect();
    let params = SvmParams {
        kernel: KernelChoice::Linear,
        ..SvmParams::default()
    };
    let mut round = 1;
    while alive.len() > 1 {
        let sub: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| alive.iter().map(|&j| r[j]).collect())
            .collect();
        let w = train_svm(&sub, labels, params)?.linear_weights();
        let mut drop = 0;
        for k in 1..alive.len() {
            if w[k] * w[k] <= w[drop] * w[drop] {
                drop = k;
            }
        }
        scores[alive.remove(drop)] = round as f64;
        round += 1;
    }
    if let Some(&last) = alive.first() {
        scores[last] = d as f64;
    }
    Ok(scores)
}
