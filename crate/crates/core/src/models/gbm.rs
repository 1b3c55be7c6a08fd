//! Gradient-boosted regression trees on the logistic loss, grown leaf-wise
//! (always splitting the leaf with the largest gain).

use serde::{Deserialize, Serialize};

use super::logreg::sigmoid;
use super::tree::midpoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbmParams {
    pub rounds: usize,
    pub learning_rate: f64,
    pub max_leaves: usize,
    pub min_leaf: usize,
    /// L2 penalty on leaf values.
    pub lambda: f64,
    pub min_leaf_hessian: f64,
}

impl Default for GbmParams {
    fn default() -> Self {
        GbmParams {
            rounds: 100,
            learning_rate: 0.1,
            max_leaves: 31,
            min_leaf: 20,
            lambda: 0.0,
            min_leaf_hessian: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegNode {
    pub feature: Option<usize>,
    pub threshold: f64,
    pub left: usize,
    pub right: usize,
    /// Leaf output, learning rate already applied.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegTree {
    pub nodes: Vec<RegNode>,
}

impl RegTree {
    pub fn predict(&self, row: &[f64]) -> f64 {
        let mut n = &self.nodes[0];
        while let Some(f) = n.feature {
            n = if row[f] <= n.threshold {
                &self.nodes[n.left]
            } else {
                &self.nodes[n.right]
            };
        }
        n.value
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.feature.is_none()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbmModel {
    /// Log-odds of the training class prior.
    pub init: f64,
    pub trees: Vec<RegTree>,
}

impl GbmModel {
    pub fn raw_score(&self, row: &[f64]) -> f64 {
        self.init + self.trees.iter().map(|t| t.predict(row)).sum::<f64>()
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        sigmoid(self.raw_score(row))
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    feature: usize,
    threshold: f64,
    gain: f64,
}

const GAIN_EPS: f64 = 1e-12;

fn best_split(x: &[Vec<f64>], g: &[f64], h: &[f64], idx: &[usize], p: &GbmParams) -> Option<Candidate> {
    let n = idx.len();
    if n < 2 * p.min_leaf {
        return None;
    }
    let d = x.first().map_or(0, Vec::len);
    let gs: f64 = idx.iter().map(|&i| g[i]).sum();
    let hs: f64 = idx.iter().map(|&i| h[i]).sum();
    let parent = gs * gs / (hs + p.lambda);
    let mut best: Option<Candidate> = None;
    let mut sorted = idx.to_vec();
    for f in 0..d {
        sorted.sort_by(|&a, &b| x[a][f].total_cmp(&x[b][f]));
        let (mut gl, mut hl) = (0.0, 0.0);
        for k in 0..n - 1 {
            gl += g[sorted[k]];
            hl += h[sorted[k]];
            let nl = k + 1;
            if nl < p.min_leaf || n - nl < p.min_leaf {
                continue;
            }
            let (a, b) = (x[sorted[k]][f], x[sorted[k + 1]][f]);
            if a == b {
                continue;
            }
            let (gr, hr) = (gs - gl, hs - hl);
            if hl < p.min_leaf_hessian || hr < p.min_leaf_hessian {
                continue;
            }
            let gain = gl * gl / (hl + p.lambda) + gr * gr / (hr + p.lambda) - parent;
            let better = match &best {
                None => true,
                Some(b) => gain > b.gain + GAIN_EPS,
            };
            if better {
                best = Some(Candidate {
                    feature: f,
                    threshold: midpoint(a, b),
                    gain,
                });
            }
        }
    }
    best.filter(|c| c.gain > GAIN_EPS)
}

fn leaf_value(g: &[f64], h: &[f64], idx: &[usize], p: &GbmParams) -> f64 {
    let gs: f64 = idx.iter().map(|&i| g[i]).sum();
    let hs: f64 = idx.iter().map(|&i| h[i]).sum();
    -gs / (hs + p.lambda) * p.learning_rate
}

fn grow(x: &[Vec<f64>], g: &[f64], h: &[f64], p: &GbmParams) -> RegTree {
    let all: Vec<usize> = (0..x.len()).collect();
    let mut nodes = vec![RegNode {
        feature: None,
        threshold: 0.0,
        left: 0,
        right: 0,
        value: leaf_value(g, h, &all, p),
    }];
    // (node id, rows, best split)
    let mut open = vec![(0usize, all.clone(), best_split(x, g, h, &all, p))];
    let mut leaves = 1;
    while leaves < p.max_leaves {
        let mut pick: Option<usize> = None;
        for (k, (_, _, cand)) in open.iter().enumerate() {
            if let Some(c) = cand {
                let take = match pick {
                    None => true,
                    Some(b) => c.gain > open[b].2.as_ref().unwrap().gain + GAIN_EPS,
                };
                if take {
                    pick = Some(k);
                }
            }
        }
        let Some(k) = pick else { break };
        let (id, rows, cand) = open.remove(k);
        let c = cand.unwrap();
        let (l, r): (Vec<usize>, Vec<usize>) = rows.into_iter().partition(|&i| x[i][c.feature] <= c.threshold);
        let (lid, rid) = (nodes.len(), nodes.len() + 1);
        for side in [&l, &r] {
            nodes.push(RegNode {
                feature: None,
                threshold: 0.0,
                left: 0,
                right: 0,
                value: leaf_value(g, h, side, p),
            });
        }
        let parent = &mut nodes[id];
        parent.feature = Some(c.feature);
        parent.threshold = c.threshold;
        parent.left = lid;
        parent.right = rid;
        parent.value = 0.0;
        let (cl, cr) = (best_split(x, g, h, &l, p), best_split(x, g, h, &r, p));
        open.insert(k, (rid, r, cr));
        open.insert(k, (lid, l, cl));
        leaves += 1;
    }
    RegTree { nodes }
}

/// Trees consume raw (unscaled) features.
pub fn train_gbm(rows: &[Vec<f64>], labels: &[u8], params: GbmParams) -> GbmModel {
    let n = rows.len();
    let pos = labels.iter().filter(|&&l| l == 1).count() as f64;
    let prior = (pos / n as f64).clamp(1e-15, 1.0 - 1e-15);
    let init = (prior / (1.0 - prior)).ln();
    let mut raw = vec![init; n];
    let mut trees = Vec::with_capacity(params.rounds);
    for _ in 0..params.rounds {
        let p: Vec<f64> = raw.iter().map(|&z| sigmoid(z)).collect();
        let g: Vec<f64> = p.iter().zip(labels).map(|(p, &y)| p - y as f64).collect();
        let h: Vec<f64> = p.iter().map(|p| p * (1.0 - p)).collect();
        let tree = grow(rows, &g, &h, &params);
        for (z, r) in raw.iter_mut().zip(rows) {
            *z += tree.predict(r);
        }
        trees.push(tree);
    }
    GbmModel { init, trees }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_set_is_intercept_only() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        let y: Vec<u8> = (0..10).map(|i| (i >= 3) as u8).collect();
        let m = train_gbm(&rows, &y, GbmParams::default());
        assert!(m.trees.iter().all(|t| t.n_leaves() == 1));
        // Leaf values are zero once the prior is fitted.
        assert!((m.score(&[0.0]) - 0.7).abs() < 1e-9);
        assert!((m.score(&[0.0]) - m.score(&[9.0])).abs() < 1e-15);
    }

    #[test]
    fn learns_threshold_with_enough_rows() {
        let rows: Vec<Vec<f64>> = (0..60).map(|i| vec![i as f64]).collect();
        let y: Vec<u8> = (0..60).map(|i| (i >= 30) as u8).collect();
        let m = train_gbm(&rows, &y, GbmParams::default());
        assert!(m.score(&[50.0]) > 0.9 && m.score(&[5.0]) < 0.1);
    }
}
