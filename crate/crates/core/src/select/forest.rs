//! Random-forest Gini importance.

use rand::Rng;
use rayon::prelude::*;

use crate::models::tree::grow_tree;
use crate::seed;

/// Mean over `n_trees` bootstrap trees of each tree's normalized Gini
/// importance, `ceil(sqrt(d))` candidate features per node. Tree `t` draws
/// from its own stream derived from `(seed, t)`, so the result does not
/// depend on thread scheduling.
pub fn rf_importances(rows: &[Vec<f64>], labels: &[u8], n_trees: usize, seed: u64) -> Vec<f64> {
    let n = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    if n == 0 || d == 0 || n_trees == 0 {
        return vec![0.0; d];
    }
    let max_features = ((d as f64).sqrt().ceil() as usize).max(1);
    let per_tree: Vec<Vec<f64>> = (0..n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed::rng(seed::derive_index(seed, t as u64));
            let sample: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            grow_tree(rows, labels, sample, Some(max_features), Some(&mut rng)).importances()
        })
        .collect();
    let mut total = vec![0.0; d];
    for imp in &per_tree {
        for (t, v) in total.iter_mut().zip(imp) {
            *t += v;
        }
    }
    total.iter().map(|v| v / n_trees as f64).collect()
}
