use serde::{Deserialize, Serialize};

use super::standardize::Standardizer;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    pub k: usize,
    pub standardizer: Standardizer,
    /// Standardized training rows.
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
}

pub fn train_knn(rows: &[Vec<f64>], labels: &[u8], k: usize) -> KnnModel {
    let standardizer = Standardizer::fit(rows);
    KnnModel {
        k: k.max(1),
        rows: standardizer.apply_all(rows),
        standardizer,
        labels: labels.to_vec(),
    }
}

impl KnnModel {
    /// Fraction of class-1 rows among the `k` nearest. Equidistant
    /// candidates are admitted class 0 first.
    pub fn score(&self, row: &[f64]) -> f64 {
        let z = self.standardizer.apply(row);
        let mut dist: Vec<(f64, u8)> = self
            .rows
            .iter()
            .zip(&self.labels)
            .map(|(r, &l)| {
                let d2: f64 = r.iter().zip(&z).map(|(a, b)| (a - b) * (a - b)).sum();
                (d2, l)
            })
            .collect();
        dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let k = self.k.min(dist.len());
        if k == 0 {
            return 0.0;
        }
        dist[..k].iter().filter(|(_, l)| *l == 1).count() as f64 / k as f64
    }
}
