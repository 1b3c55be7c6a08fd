//! L2-regularized logistic regression fitted by accelerated gradient ascent
//! on standardized inputs. The intercept is not penalized.

use serde::{Deserialize, Serialize};

use super::standardize::Standardizer;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRegParams {
    pub c: f64,
    pub grad_tol: f64,
    pub max_iter: usize,
}

impl Default for LogRegParams {
    fn default() -> Self {
        LogRegParams {
            c: 1.0,
            grad_tol: 1e-4,
            max_iter: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRegModel {
    pub standardizer: Standardizer,
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `log(1 + exp(z))` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Regularized log-likelihood; `params` is the weights followed by the intercept.
pub fn objective(params: &[f64], x: &[Vec<f64>], y: &[u8], c: f64) -> f64 {
    let d = params.len() - 1;
    let (w, b) = (&params[..d], params[d]);
    let ll: f64 = x
        .iter()
        .zip(y)
        .map(|(r, &yi)| {
            let z = b + r.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
            // y z - log(1 + e^z)
            yi as f64 * z - softplus(z)
        })
        .sum();
    ll - w.iter().map(|v| v * v).sum::<f64>() / (2.0 * c)
}

/// Gradient of [`objective`].
pub fn gradient(params: &[f64], x: &[Vec<f64>], y: &[u8], c: f64) -> Vec<f64> {
    let d = params.len() - 1;
    let (w, b) = (&params[..d], params[d]);
    let mut g = vec![0.0; d + 1];
    for (r, &yi) in x.iter().zip(y) {
        let z = b + r.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
        let resid = yi as f64 - sigmoid(z);
        for k in 0..d {
            g[k] += resid * r[k];
        }
        g[d] += resid;
    }
    for k in 0..d {
        g[k] -= w[k] / c;
    }
    g
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn train_logreg(rows: &[Vec<f64>], labels: &[u8], params: LogRegParams) -> LogRegModel {
    let standardizer = Standardizer::fit(rows);
    let x = standardizer.apply_all(rows);
    let d = x.first().map_or(0, Vec::len);
    // Lipschitz bound of the gradient: 1/4 ||[X 1]||_F^2 + 1/C.
    let frob: f64 = x.iter().map(|r| 1.0 + r.iter().map(|v| v * v).sum::<f64>()).sum();
    let step = 1.0 / (0.25 * frob + 1.0 / params.c);

    let mut theta = vec![0.0; d + 1];
    let mut prev = theta.clone();
    let mut momentum_t = 1.0_f64;
    let mut iterations = 0;
    let mut converged = false;
    let mut f_prev = objective(&theta, &x, labels, params.c);
    while iterations < params.max_iter {
        let g_here = gradient(&theta, &x, labels, params.c);
        if norm(&g_here) < params.grad_tol {
            converged = true;
            break;
        }
        iterations += 1;
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * momentum_t * momentum_t).sqrt());
        let beta = (momentum_t - 1.0) / t_next;
        let look: Vec<f64> = theta
            .iter()
            .zip(&prev)
            .map(|(a, p)| a + beta * (a - p))
            .collect();
        let g = gradient(&look, &x, labels, params.c);
        let next: Vec<f64> = look.iter().zip(&g).map(|(a, g)| a + step * g).collect();
        let f_next = objective(&next, &x, labels, params.c);
        if f_next < f_prev {
            // Objective went down: restart momentum from a plain step.
            let plain: Vec<f64> = theta.iter().zip(&g_here).map(|(a, g)| a + step * g).collect();
            prev = theta;
            f_prev = objective(&plain, &x, labels, params.c);
            theta = plain;
            momentum_t = 1.0;
            continue;
        }
        prev = theta;
        theta = next;
        f_prev = f_next;
        momentum_t = t_next;
    }
    if !converged {
        let g = gradient(&theta, &x, labels, params.c);
        converged = norm(&g) < params.grad_tol;
        if !converged {
            log::debug!(
                "logistic regression stopped after {iterations} iterations, |grad| = {:.3e}",
                norm(&g)
            );
        }
    }
    LogRegModel {
        standardizer,
        weights: theta[..d].to_vec(),
        intercept: theta[d],
        iterations,
        converged,
    }
}

impl LogRegModel {
    pub fn score(&self, row: &[f64]) -> f64 {
        let z = self.standardizer.apply(row);
        sigmoid(self.intercept + z.iter().zip(&self.weights).map(|(a, b)| a * b).sum::<f64>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_score_half() {
        let m = LogRegModel {
            standardizer: Standardizer { mean: vec![0.0; 2], sd: vec![1.0; 2] },
            weights: vec![0.0, 0.0],
            intercept: 0.0,
            iterations: 0,
            converged: true,
        };
        assert_eq!(m.score(&[3.0, -7.0]), 0.5);
    }

    #[test]
    fn converges_on_small_problem() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, (i * 7 % 5) as f64]).collect();
        let labels: Vec<u8> = (0..20).map(|i| (i >= 10) as u8).collect();
        let m = train_logreg(&rows, &labels, LogRegParams::default());
        assert!(m.converged, "{} iterations", m.iterations);
        assert!(m.score(&[19.0, 0.0]) > 0.5 && m.score(&[0.0, 0.0]) < 0.5);
    }
}
