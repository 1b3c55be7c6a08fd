//! Metrics, ROC curves and leave-one-out evaluation.

pub mod loocv;
pub mod metrics;
pub mod roc;

use std::io::Write;

use thiserror::Error;

use crate::models::ModelError;
use crate::numfmt::sig9;
use crate::select::SelectError;

pub use loocv::{
    evaluate_prepared, loocv, loocv_with_hook, prepare_folds, FoldEvent, FoldStage, LoocvConfig,
    PreparedFolds,
};
pub use metrics::{count_metrics, metrics, pairwise_auc, ConfusionMatrix, Metrics};
pub use roc::{roc_curve, Roc, RocPoint};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("both classes are required")]
    SingleClass,
    #[error("leave-one-out needs at least 3 rows, got {0}")]
    TooFewRows(usize),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Data(#[from] Box<crate::Error>),
}

impl From<crate::Error> for EvalError {
    fn from(e: crate::Error) -> Self {
        EvalError::Data(Box::new(e))
    }
}

/// One held-out participant's result.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub participant_id: String,
    pub label: u8,
    pub score: f64,
    pub predicted: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub cm: ConfusionMatrix,
    pub metrics: Metrics,
    /// Pooled over folds, participant order.
    pub predictions: Vec<Prediction>,
    pub roc: Roc,
    /// Participants whose fold was skipped.
    pub excluded: Vec<String>,
    /// Columns the model saw in the last evaluated fold.
    pub n_features: usize,
}

pub const METRICS_HEADER: [&str; 9] = ["acc", "f1", "auc", "precision", "recall", "tp", "fp", "tn", "fn"];

impl EvalReport {
    /// Metric cells in [`METRICS_HEADER`] order.
    pub fn metric_cells(&self) -> Vec<String> {
        let m = &self.metrics;
        vec![
            sig9(m.acc),
            sig9(m.f1),
            sig9(m.auc),
            sig9(m.precision),
            sig9(m.recall),
            self.cm.tp.to_string(),
            self.cm.fp.to_string(),
            self.cm.tn.to_string(),
            self.cm.fn_.to_string(),
        ]
    }

    /// Recomputes the metrics from the pooled predictions.
    pub fn recompute(&self) -> Result<Metrics, EvalError> {
        let labels: Vec<u8> = self.predictions.iter().map(|p| p.label).collect();
        let predicted: Vec<u8> = self.predictions.iter().map(|p| p.predicted).collect();
        let scores: Vec<f64> = self.predictions.iter().map(|p| p.score).collect();
        metrics(&ConfusionMatrix::from_predictions(&labels, &predicted), &labels, &scores)
    }

    pub fn write_metrics_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(METRICS_HEADER)?;
        w.write_record(self.metric_cells())?;
        w.flush()
    }

    /// `participant_id,label,score,predicted`.
    pub fn write_predictions_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["participant_id", "label", "score", "predicted"])?;
        for p in &self.predictions {
            w.write_record([
                p.participant_id.clone(),
                p.label.to_string(),
                sig9(p.score),
                p.predicted.to_string(),
            ])?;
        }
        w.flush()
    }

    /// `fpr,tpr,threshold`.
    pub fn write_roc_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["fpr", "tpr", "threshold"])?;
        for p in &self.roc.points {
            let thr = if p.threshold.is_infinite() { "inf".to_string() } else { sig9(p.threshold) };
            w.write_record([sig9(p.fpr), sig9(p.tpr), thr])?;
        }
        w.flush()
    }
}
