//! Feature ranking and top-proportion selection.
//!
//! All rankers order by descending score and break ties by ascending
//! column index.

pub mod forest;
pub mod mic;
pub mod rfe;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::FeatureMatrix;
use crate::models::ModelError;
use crate::numfmt::sig9;

/// Bins per feature for the mutual-information ranker.
pub const MIC_BINS: usize = 5;
/// Trees in the random-forest ranker.
pub const RF_TREES: usize = 100;

#[derive(Debug, Error)]
pub enum SelectError {
    #[error("need at least 2 rows to rank features, got {0}")]
    TooFewRows(usize),
    #[error("ranking needs both classes present")]
    SingleClass,
    #[error("non-finite value at row {row}, column `{column}`")]
    NonFinite { row: usize, column: String },
    #[error("proportion {0} is outside (0, 1]")]
    Proportion(f64),
    #[error("SVM-RFE: {0}")]
    Solver(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SelectorKind {
    Mic,
    SvmRfe,
    Rf,
}

impl SelectorKind {
    pub const ALL: [SelectorKind; 3] = [SelectorKind::Mic, SelectorKind::SvmRfe, SelectorKind::Rf];

    pub fn key(self) -> &'static str {
        match self {
            SelectorKind::Mic => "mic",
            SelectorKind::SvmRfe => "svmrfe",
            SelectorKind::Rf => "rf",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SelectorKind::Mic => "MIC",
            SelectorKind::SvmRfe => "SVM-RFE",
            SelectorKind::Rf => "RF",
        }
    }
}

impl fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for SelectorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "mic" | "mi" => Ok(SelectorKind::Mic),
            "svmrfe" | "rfe" => Ok(SelectorKind::SvmRfe),
            "rf" | "forest" => Ok(SelectorKind::Rf),
            other => Err(format!("unknown selector `{other}` (expected mic, svmrfe, rf)")),
        }
    }
}

/// Features ordered by importance, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedFeatures {
    pub method: SelectorKind,
    pub entries: Vec<(String, f64)>,
}

impl RankedFeatures {
    pub const TIE_BREAK: &'static str = "descending score, then ascending column index";

    /// Orders `names` by `scores`.
    pub fn from_scores(method: SelectorKind, names: &[String], scores: &[f64]) -> RankedFeatures {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        RankedFeatures {
            method,
            entries: order.into_iter().map(|j| (names[j].clone(), scores[j])).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    /// CSV with header `rank,name,score`.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["rank", "name", "score"])?;
        for (k, (name, score)) in self.entries.iter().enumerate() {
            w.write_record([(k + 1).to_string(), name.clone(), sig9(*score)])?;
        }
        w.flush()
    }
}

/// Number of features kept: `floor(proportion * total)`, at least 1.
pub fn top_k(total: usize, proportion: f64) -> Result<usize, SelectError> {
    if !(proportion > 0.0 && proportion <= 1.0) {
        return Err(SelectError::Proportion(proportion));
    }
    // The nudge keeps exact products such as 0.65 * 100 from rounding down.
    let k = (proportion * total as f64 + 1e-9).floor() as usize;
    Ok(k.clamp(1.min(total), total))
}

/// The first `top_k` names of the ranking.
pub fn select_top(ranked: &RankedFeatures, proportion: f64) -> Result<Vec<String>, SelectError> {
    let k = top_k(ranked.len(), proportion)?;
    Ok(ranked.entries[..k].iter().map(|(n, _)| n.clone()).collect())
}

fn check(m: &FeatureMatrix) -> Result<(), SelectError> {
    if m.n_rows() < 2 {
        return Err(SelectError::TooFewRows(m.n_rows()));
    }
    if !m.has_both_classes() {
        return Err(SelectError::SingleClass);
    }
    for (i, r) in m.rows().iter().enumerate() {
        if let Some(j) = r.iter().position(|v| !v.is_finite()) {
            return Err(SelectError::NonFinite {
                row: i + 1,
                column: m.names()[j].clone(),
            });
        }
    }
    Ok(())
}

pub fn mic_rank(m: &FeatureMatrix) -> Result<RankedFeatures, SelectError> {
    check(m)?;
    let cols: Vec<Vec<f64>> = (0..m.n_cols()).map(|j| m.column(j)).collect();
    let scores = mic::mic_scores(&cols, m.labels(), MIC_BINS);
    Ok(RankedFeatures::from_scores(SelectorKind::Mic, m.names(), &scores))
}

pub fn svm_rfe_rank(m: &FeatureMatrix) -> Result<RankedFeatures, SelectError> {
    check(m)?;
    let scores = rfe::svm_rfe_scores(m.rows(), m.labels())?;
    Ok(RankedFeatures::from_scores(SelectorKind::SvmRfe, m.names(), &scores))
}

pub fn rf_rank(m: &FeatureMatrix, n_trees: usize, seed: u64) -> Result<RankedFeatures, SelectError> {
    check(m)?;
    let scores = forest::rf_importances(m.rows(), m.labels(), n_trees, seed);
    Ok(RankedFeatures::from_scores(SelectorKind::Rf, m.names(), &scores))
}

/// Ranks with default settings; `seed` only matters for the forest.
pub fn rank(kind: SelectorKind, m: &FeatureMatrix, seed: u64) -> Result<RankedFeatures, SelectError> {
    match kind {
        SelectorKind::Mic => mic_rank(m),
        SelectorKind::SvmRfe => svm_rfe_rank(m),
        SelectorKind::Rf => rf_rank(m, RF_TREES, seed),
    }
}
