//! The five binary classifiers and a common trained-model wrapper.
//!
//! Defaults:
//!
//! | model | settings |
//! |-------|----------|
//! | SVM   | RBF, `gamma = 1/(d Var(X))`, C = 1, tol 1e-3, z-scored inputs |
//! | KNN   | k = 5, uniform votes, Euclidean on z-scored inputs |
//! | LR    | L2, C = 1, \|grad\| < 1e-4 or 1000 iterations, z-scored inputs |
//! | LGBM  | 100 rounds, rate 0.1, <= 31 leaves, >= 20 rows per leaf |
//! | DTree | CART, Gini, grown to purity |
//!
//! Scores are raw decision values: SVM margin (label 1 iff > 0), otherwise
//! a class-1 probability (label 1 iff > 0.5).

pub mod gbm;
pub mod knn;
pub mod logreg;
pub mod standardize;
pub mod svm;
pub mod tree;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::FeatureMatrix;

pub use gbm::{GbmModel, GbmParams};
pub use knn::KnnModel;
pub use logreg::{LogRegModel, LogRegParams};
pub use standardize::Standardizer;
pub use svm::{Kernel, KernelChoice, SvmModel, SvmParams};
pub use tree::DecisionTree;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("training set has a single class")]
    SingleClass,
    #[error("training set is empty")]
    Empty,
    #[error("non-finite value at row {row}, column `{column}`")]
    NonFinite { row: usize, column: String },
    #[error("SMO did not converge after {iterations} iterations (KKT violation {violation:.3e})")]
    NotConverged { iterations: usize, violation: f64 },
    #[error("expected {expected} input columns, got {found}")]
    ColumnCount { expected: usize, found: usize },
    #[error("input columns do not match the model: expected {expected:?}")]
    ColumnMismatch { expected: Vec<String> },
    #[error("model file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Svm,
    Knn,
    Lr,
    Lgbm,
    Dtree,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Svm,
        ModelKind::Knn,
        ModelKind::Lr,
        ModelKind::Lgbm,
        ModelKind::Dtree,
    ];

    pub fn key(self) -> &'static str {
        match self {
            ModelKind::Svm => "svm",
            ModelKind::Knn => "knn",
            ModelKind::Lr => "lr",
            ModelKind::Lgbm => "lgbm",
            ModelKind::Dtree => "dtree",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelKind::Svm => "SVM",
            ModelKind::Knn => "KNN",
            ModelKind::Lr => "LR",
            ModelKind::Lgbm => "LGBM",
            ModelKind::Dtree => "DTree",
        }
    }

    /// Score above which the predicted label is 1.
    pub fn threshold(self) -> f64 {
        match self {
            ModelKind::Svm => 0.0,
            _ => 0.5,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "svm" => Ok(ModelKind::Svm),
            "knn" => Ok(ModelKind::Knn),
            "lr" | "logreg" => Ok(ModelKind::Lr),
            "lgbm" | "gbm" => Ok(ModelKind::Lgbm),
            "dtree" | "tree" => Ok(ModelKind::Dtree),
            other => Err(format!("unknown model `{other}` (expected svm, knn, lr, lgbm, dtree)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    Svm(SvmModel),
    Knn(KnnModel),
    Lr(LogRegModel),
    Lgbm(GbmModel),
    Dtree(DecisionTree),
}

/// A fitted model together with the columns it expects, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub columns: Vec<String>,
    pub model: Model,
}

fn check_training(m: &FeatureMatrix) -> Result<(), ModelError> {
    if m.n_rows() == 0 {
        return Err(ModelError::Empty);
    }
    if !m.has_both_classes() {
        return Err(ModelError::SingleClass);
    }
    for (i, r) in m.rows().iter().enumerate() {
        if let Some(j) = r.iter().position(|v| !v.is_finite()) {
            return Err(ModelError::NonFinite {
                row: i + 1,
                column: m.names()[j].clone(),
            });
        }
    }
    Ok(())
}

/// Trains `kind` with its default settings.
pub fn train(kind: ModelKind, m: &FeatureMatrix) -> Result<TrainedModel, ModelError> {
    check_training(m)?;
    let (x, y) = (m.rows(), m.labels());
    let model = match kind {
        ModelKind::Svm => Model::Svm(svm::train_svm(x, y, SvmParams::default())?),
        ModelKind::Knn => Model::Knn(knn::train_knn(x, y, 5)),
        ModelKind::Lr => Model::Lr(logreg::train_logreg(x, y, LogRegParams::default())),
        ModelKind::Lgbm => Model::Lgbm(gbm::train_gbm(x, y, GbmParams::default())),
        ModelKind::Dtree => Model::Dtree(tree::train_dtree(x, y)),
    };
    Ok(TrainedModel {
        columns: m.names().to_vec(),
        model,
    })
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        match self.model {
            Model::Svm(_) => ModelKind::Svm,
            Model::Knn(_) => ModelKind::Knn,
            Model::Lr(_) => ModelKind::Lr,
            Model::Lgbm(_) => ModelKind::Lgbm,
            Model::Dtree(_) => ModelKind::Dtree,
        }
    }

    pub fn threshold(&self) -> f64 {
        self.kind().threshold()
    }

    pub fn score(&self, row: &[f64]) -> Result<f64, ModelError> {
        if row.len() != self.columns.len() {
            return Err(ModelError::ColumnCount {
                expected: self.columns.len(),
                found: row.len(),
            });
        }
        Ok(match &self.model {
            Model::Svm(m) => m.score(row),
            Model::Knn(m) => m.score(row),
            Model::Lr(m) => m.score(row),
            Model::Lgbm(m) => m.score(row),
            Model::Dtree(m) => m.predict_proba(row),
        })
    }

    pub fn predict(&self, row: &[f64]) -> Result<u8, ModelError> {
        Ok((self.score(row)? > self.threshold()) as u8)
    }

    /// Scores every row of `m`, whose columns must equal the training columns.
    pub fn score_matrix(&self, m: &FeatureMatrix) -> Result<Vec<f64>, ModelError> {
        if m.names() != self.columns.as_slice() {
            return Err(ModelError::ColumnMismatch {
                expected: self.columns.clone(),
            });
        }
        m.rows().iter().map(|r| self.score(r)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<TrainedModel, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> crate::Result<()> {
        let path = path.as_ref();
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| crate::Error::io(dir, e))?;
        }
        std::fs::write(path, self.to_json()).map_err(|e| crate::Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> crate::Result<TrainedModel> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
        Ok(Self::from_json(&text)?)
    }
}
