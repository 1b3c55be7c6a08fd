//! CART classification trees (Gini impurity), shared by the decision-tree
//! model and the random-forest ranker.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    /// `None` for a leaf.
    pub feature: Option<usize>,
    pub threshold: f64,
    pub left: usize,
    pub right: usize,
    /// Training samples reaching the node, by class (0, 1).
    pub counts: [usize; 2],
    pub gini: f64,
}

impl TreeNode {
    pub fn samples(&self) -> usize {
        self.counts[0] + self.counts[1]
    }

    pub fn is_leaf(&self) -> bool {
        self.feature.is_none()
    }
}

/// Nodes in depth-first preorder; node 0 is the root. Rows with
/// `x[feature] <= threshold` go left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<TreeNode>,
    pub n_features: usize,
}

pub fn gini(counts: [usize; 2]) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let p = counts[1] as f64 / n;
    2.0 * p * (1.0 - p)
}

const GAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
struct Split {
    feature: usize,
    threshold: f64,
    gain: f64,
}

/// Better gain wins; near-equal gains go to the lower feature index. Within
/// one feature thresholds are scanned upward, so the first stays.
fn better(candidate: &Split, best: &Option<Split>) -> bool {
    match best {
        None => true,
        Some(b) => {
            candidate.gain > b.gain + GAIN_EPS
                || ((candidate.gain - b.gain).abs() <= GAIN_EPS && candidate.feature < b.feature)
        }
    }
}

pub(crate) fn midpoint(a: f64, b: f64) -> f64 {
    let m = a + (b - a) / 2.0;
    if m >= b {
        a
    } else {
        m
    }
}

struct Builder<'a, R> {
    x: &'a [Vec<f64>],
    y: &'a [u8],
    max_features: Option<usize>,
    rng: Option<&'a mut R>,
    nodes: Vec<TreeNode>,
    n_features: usize,
}

impl<R: Rng> Builder<'_, R> {
    fn best_split(&mut self, idx: &[usize], counts: [usize; 2]) -> Option<Split> {
        let parent = gini(counts);
        let n = idx.len() as f64;
        let mut order: Vec<usize> = (0..self.n_features).collect();
        if let Some(rng) = self.rng.as_deref_mut() {
            order.shuffle(rng);
        }
        let budget = self.max_features.unwrap_or(self.n_features);
        let mut visited = 0;
        let mut best: Option<Split> = None;
        let mut sorted = idx.to_vec();
        for f in order {
            if visited >= budget {
                break;
            }
            sorted.sort_by(|&a, &b| self.x[a][f].total_cmp(&self.x[b][f]));
            let lo = self.x[sorted[0]][f];
            let hi = self.x[sorted[sorted.len() - 1]][f];
            if lo == hi {
                continue;
            }
            visited += 1;
            let mut left = [0usize; 2];
            for k in 0..sorted.len() - 1 {
                left[self.y[sorted[k]] as usize] += 1;
                let (a, b) = (self.x[sorted[k]][f], self.x[sorted[k + 1]][f]);
                if a == b {
                    continue;
                }
                let right = [counts[0] - left[0], counts[1] - left[1]];
                let nl = (k + 1) as f64;
                let gain = parent - nl / n * gini(left) - (n - nl) / n * gini(right);
                let cand = Split {
                    feature: f,
                    threshold: midpoint(a, b),
                    gain,
                };
                if better(&cand, &best) {
                    best = Some(cand);
                }
            }
        }
        best
    }

    fn grow(&mut self, idx: Vec<usize>) -> usize {
        let mut counts = [0usize; 2];
        for &i in &idx {
            counts[self.y[i] as usize] += 1;
        }
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            feature: None,
            threshold: 0.0,
            left: 0,
            right: 0,
            counts,
            gini: gini(counts),
        });
        if idx.len() < 2 || counts[0] == 0 || counts[1] == 0 {
            return id;
        }
        let Some(split) = self.best_split(&idx, counts) else {
            return id;
        };
        let (l, r): (Vec<usize>, Vec<usize>) =
            idx.into_iter().partition(|&i| self.x[i][split.feature] <= split.threshold);
        let left = self.grow(l);
        let right = self.grow(r);
        let node = &mut self.nodes[id];
        node.feature = Some(split.feature);
        node.threshold = split.threshold;
        node.left = left;
        node.right = right;
        id
    }
}

/// Grows a tree to purity on the rows listed in `sample` (repeats allowed).
/// With `max_features`, each node considers a shuffled feature order and
/// stops after that many non-constant features.
pub fn grow_tree<R: Rng>(
    x: &[Vec<f64>],
    y: &[u8],
    sample: Vec<usize>,
    max_features: Option<usize>,
    rng: Option<&mut R>,
) -> DecisionTree {
    let n_features = x.first().map_or(0, Vec::len);
    let mut b = Builder {
        x,
        y,
        max_features,
        rng,
        nodes: Vec::new(),
        n_features,
    };
    b.grow(sample);
    DecisionTree {
        nodes: b.nodes,
        n_features,
    }
}

impl DecisionTree {
    pub fn leaf(&self, row: &[f64]) -> &TreeNode {
        let mut node = &self.nodes[0];
        while let Some(f) = node.feature {
            node = if row[f] <= node.threshold {
                &self.nodes[node.left]
            } else {
                &self.nodes[node.right]
            };
        }
        node
    }

    /// Class-1 share of the training samples in the row's leaf.
    pub fn predict_proba(&self, row: &[f64]) -> f64 {
        let leaf = self.leaf(row);
        leaf.counts[1] as f64 / leaf.samples().max(1) as f64
    }

    /// Total weighted Gini decrease per feature, unnormalized.
    pub fn raw_importances(&self) -> Vec<f64> {
        let total = self.nodes[0].samples() as f64;
        let mut imp = vec![0.0; self.n_features];
        for node in &self.nodes {
            if let Some(f) = node.feature {
                let (l, r) = (&self.nodes[node.left], &self.nodes[node.right]);
                let dec = node.samples() as f64 * node.gini
                    - l.samples() as f64 * l.gini
                    - r.samples() as f64 * r.gini;
                imp[f] += dec / total;
            }
        }
        imp
    }

    /// Importances scaled to sum to 1; all zero for a single-leaf tree.
    pub fn importances(&self) -> Vec<f64> {
        let raw = self.raw_importances();
        let sum: f64 = raw.iter().sum();
        if sum > 0.0 {
            raw.iter().map(|v| v / sum).collect()
        } else {
            raw
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(t: &DecisionTree, i: usize) -> usize {
            let n = &t.nodes[i];
            if n.is_leaf() {
                0
            } else {
                1 + walk(t, n.left).max(walk(t, n.right))
            }
        }
        walk(self, 0)
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }
}

/// Fully grown CART on all rows and features.
pub fn train_dtree(rows: &[Vec<f64>], labels: &[u8]) -> DecisionTree {
    grow_tree::<rand_chacha::ChaCha8Rng>(rows, labels, (0..rows.len()).collect(), None, None)
}

/// Graphviz description of the tree: split rule, Gini, sample count and
/// class counts `[novice, expert]` per node; thresholds to 4 decimals.
pub fn to_dot(tree: &DecisionTree, names: &[String]) -> String {
    let mut out = String::from("digraph Tree {\nnode [shape=box, fontname=\"helvetica\"] ;\n");
    for (i, node) in tree.nodes.iter().enumerate() {
        let class = if node.counts[1] > node.counts[0] { "expert" } else { "novice" };
        let body = format!(
            "gini = {:.4}\\nsamples = {}\\nvalue = [{}, {}]\\nclass = {class}",
            node.gini,
            node.samples(),
            node.counts[0],
            node.counts[1]
        );
        match node.feature {
            Some(f) => out.push_str(&format!(
                "{i} [label=\"{} <= {:.4}\\n{body}\"] ;\n",
                names[f], node.threshold
            )),
            None => out.push_str(&format!("{i} [label=\"{body}\"] ;\n")),
        }
        if node.feature.is_some() {
            out.push_str(&format!("{i} -> {} [headlabel=\"True\"] ;\n", node.left));
            out.push_str(&format!("{i} -> {} [headlabel=\"False\"] ;\n", node.right));
        }
    }
    out.push_str("}\n");
    out
}

/// `(feature name, importance)` for features used by the tree, largest
/// first, ties by column order.
pub fn importance_table(tree: &DecisionTree, names: &[String]) -> Vec<(String, f64)> {
    let imp = tree.importances();
    let mut rows: Vec<(usize, f64)> = imp.iter().copied().enumerate().filter(|(_, v)| *v > 0.0).collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    rows.into_iter().map(|(j, v)| (names[j].clone(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gini_values() {
        assert_eq!(gini([5, 5]), 0.5);
        assert_eq!(gini([7, 0]), 0.0);
    }

    #[test]
    fn label_copy_gives_single_split() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![(i * 37 % 11) as f64, (i % 2) as f64]).collect();
        let y: Vec<u8> = (0..10).map(|i| (i % 2) as u8).collect();
        let t = train_dtree(&rows, &y);
        assert_eq!(t.nodes.len(), 3);
        assert_eq!(t.nodes[0].feature, Some(1));
        assert_eq!(t.importances(), vec![0.0, 1.0]);
        assert!(rows.iter().zip(&y).all(|(r, &l)| (t.predict_proba(r) > 0.5) as u8 == l));
    }

    #[test]
    fn xor_needs_zero_gain_root() {
        let rows = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
        let y = vec![0, 1, 1, 0];
        let t = train_dtree(&rows, &y);
        assert_eq!(t.depth(), 2);
        assert!(rows.iter().zip(&y).all(|(r, &l)| (t.predict_proba(r) > 0.5) as u8 == l));
        let s: f64 = t.importances().iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dot_export_lists_nodes() {
        let rows = vec![vec![0.0], vec![1.0]];
        let t = train_dtree(&rows, &[0, 1]);
        let dot = to_dot(&t, &["f".to_string()]);
        assert!(dot.contains("0 [label=\"f <= 0.5000\\ngini = 0.5000"));
        assert_eq!(dot.matches("[label=").count(), 3);
    }
}
