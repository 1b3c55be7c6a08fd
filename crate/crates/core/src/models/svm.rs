//! Support vector machine trained by sequential minimal optimization.
//!
//! The solver works on the dual
//!
//! ```text
//! max  sum(a) - 1/2 sum_ij a_i a_j y_i y_j K(x_i, x_j)
//! s.t. 0 <= a_i <= C,  sum_i a_i y_i = 0
//! ```
//!
//! with second-order working-set selection (the maximal-violating `i`,
//! then the `j` with the largest guaranteed objective increase) and stops
//! once the maximal KKT violation `m - M` drops below `tol`.

use serde::{Deserialize, Serialize};

use super::standardize::Standardizer;
use super::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Kernel {
    Linear,
    Rbf { gamma: f64 },
}

impl Kernel {
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            Kernel::Linear => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            Kernel::Rbf { gamma } => {
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (-gamma * d2).exp()
            }
        }
    }

    /// Row-major `n x n` Gram matrix.
    pub fn gram(&self, x: &[Vec<f64>]) -> Vec<f64> {
        let n = x.len();
        let mut k = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = self.eval(&x[i], &x[j]);
                k[i * n + j] = v;
                k[j * n + i] = v;
            }
        }
        k
    }
}

/// Which kernel to build at training time; the RBF width is derived from
/// the training data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelChoice {
    Linear,
    /// `gamma = 1 / (d * Var(all standardized training entries))`.
    RbfScale,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub c: f64,
    pub kernel: KernelChoice,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            c: 1.0,
            kernel: KernelChoice::RbfScale,
            tol: 1e-3,
            max_iter: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoSolution {
    pub alpha: Vec<f64>,
    /// Decision offset: `f(x) = sum a_i y_i K(x_i, x) + bias`.
    pub bias: f64,
    pub iterations: usize,
    /// `m - M` at exit.
    pub violation: f64,
}

/// Dual objective `sum(a) - 1/2 a^T Q a` with `Q_ij = y_i y_j K_ij`.
pub fn dual_objective(alpha: &[f64], y: &[f64], gram: &[f64]) -> f64 {
    let n = alpha.len();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * gram[i * n + j];
        }
    }
    alpha.iter().sum::<f64>() - 0.5 * quad
}

const TAU: f64 = 1e-12;

/// Solves the dual for labels `y` in {-1, +1} and a precomputed Gram matrix.
pub fn smo_solve(gram: &[f64], y: &[f64], c: f64, tol: f64, max_iter: usize) -> Result<SmoSolution, ModelError> {
    let n = y.len();
    let q = |i: usize, j: usize| y[i] * y[j] * gram[i * n + j];
    let mut alpha = vec![0.0; n];
    // Gradient of 1/2 a^T Q a - sum(a).
    let mut grad = vec![-1.0; n];
    let is_up = |a: f64, yt: f64| (yt > 0.0 && a < c) || (yt < 0.0 && a > 0.0);
    let is_low = |a: f64, yt: f64| (yt > 0.0 && a > 0.0) || (yt < 0.0 && a < c);

    let mut iterations = 0;
    let violation = loop {
        let mut gmax = f64::NEG_INFINITY;
        let mut gmin = f64::INFINITY;
        let mut i_sel = usize::MAX;
        for t in 0..n {
            if is_up(alpha[t], y[t]) {
                let v = -y[t] * grad[t];
                if v > gmax {
                    gmax = v;
                    i_sel = t;
                }
            }
        }
        let mut j_sel = usize::MAX;
        let mut best = f64::INFINITY;
        for t in 0..n {
            if !is_low(alpha[t], y[t]) {
                continue;
            }
            let v = -y[t] * grad[t];
            gmin = gmin.min(v);
            if i_sel != usize::MAX && v < gmax {
                let b = gmax - v;
                let mut a = gram[i_sel * n + i_sel] + gram[t * n + t] - 2.0 * gram[i_sel * n + t];
                if a <= 0.0 {
                    a = TAU;
                }
                let obj = -(b * b) / a;
                if obj < best {
                    best = obj;
                    j_sel = t;
                }
            }
        }
        let violation = gmax - gmin;
        if i_sel == usize::MAX || j_sel == usize::MAX || violation <= tol {
            break violation.max(0.0);
        }
        if iterations >= max_iter {
            return Err(ModelError::NotConverged {
                iterations,
                violation,
            });
        }
        iterations += 1;

        let (i, j) = (i_sel, j_sel);
        let (old_i, old_j) = (alpha[i], alpha[j]);
        let kii = gram[i * n + i];
        let kjj = gram[j * n + j];
        let kij = gram[i * n + j];
        let mut quad = kii + kjj - 2.0 * kij;
        if quad <= 0.0 {
            quad = TAU;
        }
        if y[i] != y[j] {
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] += q(t, i) * di + q(t, j) * dj;
        }
    };

    // Offset from free vectors, or the midpoint of the feasible interval.
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut free, mut sum_free) = (0usize, 0.0);
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            free += 1;
            sum_free += yg;
        }
    }
    let rho = if free > 0 {
        sum_free / free as f64
    } else {
        0.5 * (ub + lb)
    };
    Ok(SmoSolution {
        alpha,
        bias: -rho,
        iterations,
        violation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub kernel: Kernel,
    pub c: f64,
    pub standardizer: Standardizer,
    /// Standardized support vectors.
    pub support: Vec<Vec<f64>>,
    /// `a_i y_i` per support vector.
    pub coef: Vec<f64>,
    pub bias: f64,
}

impl SvmModel {
    pub fn score(&self, row: &[f64]) -> f64 {
        let z = self.standardizer.apply(row);
        self.decision_standardized(&z)
    }

    pub fn decision_standardized(&self, z: &[f64]) -> f64 {
        self.support
            .iter()
            .zip(&self.coef)
            .map(|(sv, c)| c * self.kernel.eval(sv, z))
            .sum::<f64>()
            + self.bias
    }

    /// Primal weights; only meaningful for the linear kernel.
    pub fn linear_weights(&self) -> Vec<f64> {
        let d = self.standardizer.mean.len();
        let mut w = vec![0.0; d];
        for (sv, c) in self.support.iter().zip(&self.coef) {
            for k in 0..d {
                w[k] += c * sv[k];
            }
        }
        w
    }
}

/// Variance of every entry of the (already standardized) matrix.
fn pooled_variance(x: &[Vec<f64>]) -> f64 {
    let count = x.iter().map(Vec::len).sum::<usize>();
    if count == 0 {
        return 0.0;
    }
    let mean = x.iter().flatten().sum::<f64>() / count as f64;
    x.iter().flatten().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count as f64
}

/// Trains on raw rows with 0/1 labels; inputs are z-scored internally.
pub fn train_svm(rows: &[Vec<f64>], labels: &[u8], params: SvmParams) -> Result<SvmModel, ModelError> {
    let standardizer = Standardizer::fit(rows);
    let x = standardizer.apply_all(rows);
    let d = x.first().map_or(0, Vec::len).max(1);
    let kernel = match params.kernel {
        KernelChoice::Linear => Kernel::Linear,
        KernelChoice::RbfScale => {
            let var = pooled_variance(&x);
            let gamma = if var > 0.0 { 1.0 / (d as f64 * var) } else { 1.0 / d as f64 };
            Kernel::Rbf { gamma }
        }
    };
    let y: Vec<f64> = labels.iter().map(|&l| if l == 1 { 1.0 } else { -1.0 }).collect();
    let gram = kernel.gram(&x);
    let sol = smo_solve(&gram, &y, params.c, params.tol, params.max_iter)?;
    let (mut support, mut coef) = (Vec::new(), Vec::new());
    for (i, a) in sol.alpha.iter().enumerate() {
        if *a > 0.0 {
            support.push(x[i].clone());
            coef.push(a * y[i]);
        }
    }
    Ok(SvmModel {
        kernel,
        c: params.c,
        standardizer,
        support,
        coef,
        bias: sol.bias,
    })
}
