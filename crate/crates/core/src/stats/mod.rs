//! Independent-samples Student t-test with Cohen's d.

pub mod special;

use thiserror::Error;

pub use special::t_two_sided_p;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("group needs at least 2 observations, got {0}")]
    TooSmall(usize),
    #[error("invalid group summary: {0}")]
    Invalid(String),
}

/// Size, mean and sample SD (n - 1 denominator) of one group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupSummary {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

impl GroupSummary {
    pub fn new(n: usize, mean: f64, sd: f64) -> Result<Self, StatsError> {
        if n < 2 {
            return Err(StatsError::TooSmall(n));
        }
        if !(sd >= 0.0) || !mean.is_finite() || !sd.is_finite() {
            return Err(StatsError::Invalid(format!("mean {mean}, sd {sd}")));
        }
        Ok(GroupSummary { n, mean, sd })
    }

    pub fn from_samples(x: &[f64]) -> Result<Self, StatsError> {
        let n = x.len();
        if n < 2 {
            return Err(StatsError::TooSmall(n));
        }
        let mean = x.iter().sum::<f64>() / n as f64;
        let ss: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
        Self::new(n, mean, (ss / (n - 1) as f64).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTest {
    /// Positive when the first group's mean is larger.
    pub t: f64,
    pub df: f64,
    pub cohen_d: f64,
    pub p: f64,
    /// Both groups have zero spread but different means.
    pub infinite: bool,
}

impl TTest {
    /// `*` below 0.05, otherwise empty.
    pub fn stars(&self) -> &'static str {
        if self.p < 0.05 {
            "*"
        } else {
            ""
        }
    }
}

/// Equal-variance t-test from summaries.
pub fn t_test(a: &GroupSummary, b: &GroupSummary) -> TTest {
    let (n1, n2) = (a.n as f64, b.n as f64);
    let df = n1 + n2 - 2.0;
    let pooled = (((n1 - 1.0) * a.sd * a.sd + (n2 - 1.0) * b.sd * b.sd) / df).sqrt();
    let diff = a.mean - b.mean;
    if pooled == 0.0 {
        if diff == 0.0 {
            return TTest { t: 0.0, df, cohen_d: 0.0, p: 1.0, infinite: false };
        }
        let inf = f64::INFINITY.copysign(diff);
        return TTest { t: inf, df, cohen_d: inf, p: 0.0, infinite: true };
    }
    let t = diff / (pooled * (1.0 / n1 + 1.0 / n2).sqrt());
    TTest {
        t,
        df,
        cohen_d: diff / pooled,
        p: t_two_sided_p(t, df),
        infinite: false,
    }
}

pub fn t_test_raw(a: &[f64], b: &[f64]) -> Result<TTest, StatsError> {
    Ok(t_test(&GroupSummary::from_samples(a)?, &GroupSummary::from_samples(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_groups() {
        let r = t_test_raw(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((r.t, r.cohen_d, r.p), (0.0, 0.0, 1.0));
    }

    #[test]
    fn degenerate_groups() {
        let r = t_test_raw(&[0.0; 4], &[1.0; 4]).unwrap();
        assert!(r.infinite && r.t == f64::NEG_INFINITY);
        assert!(t_test_raw(&[1.0], &[1.0, 2.0]).is_err());
    }
}
