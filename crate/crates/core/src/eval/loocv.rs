//! Leave-one-out cross-validation.
//!
//! Each fold holds out one participant and fits imputation means, the
//! feature ranking and the model on the remaining rows only. With
//! `leak_compat` the imputation and ranking are fitted once on all rows
//! instead, and only the model is refitted per fold.

use rayon::prelude::*;

use super::metrics::{metrics, ConfusionMatrix};
use super::roc::roc_curve;
use super::{EvalError, EvalReport, Prediction};
use crate::data::FeatureMatrix;
use crate::models::{self, ModelKind};
use crate::seed;
use crate::select::{self, RankedFeatures, SelectorKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoocvConfig {
    /// `None` keeps every column.
    pub selector: Option<SelectorKind>,
    pub proportion: f64,
    pub model: ModelKind,
    pub leak_compat: bool,
    pub seed: u64,
}

impl LoocvConfig {
    pub fn new(selector: SelectorKind, proportion: f64, model: ModelKind) -> Self {
        LoocvConfig {
            selector: Some(selector),
            proportion,
            model,
            leak_compat: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldStage {
    Impute,
    Select,
    Train,
}

/// Reported to the instrumentation hook: which participants a fitting
/// step of a fold saw.
#[derive(Debug)]
pub struct FoldEvent<'a> {
    pub fold: usize,
    pub held_out: &'a str,
    pub stage: FoldStage,
    pub fitted_on: &'a [String],
}

pub type FoldHook<'a> = &'a (dyn Fn(&FoldEvent<'_>) + Sync);

fn no_hook(_: &FoldEvent<'_>) {}

/// Per-fold preprocessing shared by every model and proportion: imputed
/// training rows, imputed held-out row and the ranking.
#[derive(Debug, Clone)]
pub struct PreparedFold {
    pub train: FeatureMatrix,
    pub test: FeatureMatrix,
    pub ranking: Option<RankedFeatures>,
}

/// Folds in participant order; `None` for folds whose training rows hold
/// a single class.
#[derive(Debug, Clone)]
pub struct PreparedFolds {
    pub folds: Vec<Option<PreparedFold>>,
    pub matrix: FeatureMatrix,
}

/// Stage seed used for the forest ranker.
pub fn ranker_seed(seed: u64) -> u64 {
    seed::derive(seed, "rank.rf")
}

pub fn prepare_folds(
    m: &FeatureMatrix,
    selector: Option<SelectorKind>,
    leak_compat: bool,
    seed: u64,
    hook: Option<FoldHook<'_>>,
) -> Result<PreparedFolds, EvalError> {
    let hook: FoldHook<'_> = hook.unwrap_or(&no_hook);
    let n = m.n_rows();
    if n < 3 {
        return Err(EvalError::TooFewRows(n));
    }
    if !m.has_both_classes() {
        return Err(EvalError::SingleClass);
    }
    let rank_seed = ranker_seed(seed);
    let global = if leak_compat {
        let imputed = m.impute(&m.column_means());
        let ranking = match selector {
            Some(s) => Some(select::rank(s, &imputed, rank_seed)?),
            None => None,
        };
        Some((imputed, ranking))
    } else {
        None
    };
    let folds = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Option<PreparedFold>, EvalError> {
            let train_raw = m.without_row(i);
            if !train_raw.has_both_classes() {
                return Ok(None);
            }
            let held_out = m.ids()[i].as_str();
            let event = |stage, fitted_on: &[String]| {
                hook(&FoldEvent {
                    fold: i,
                    held_out,
                    stage,
                    fitted_on,
                })
            };
            let (train, test, ranking) = match &global {
                Some((imputed, ranking)) => {
                    event(FoldStage::Impute, m.ids());
                    if ranking.is_some() {
                        event(FoldStage::Select, m.ids());
                    }
                    (imputed.without_row(i), imputed.select_rows(&[i]), ranking.clone())
                }
                None => {
                    event(FoldStage::Impute, train_raw.ids());
                    let means = train_raw.column_means();
                    let train = train_raw.impute(&means);
                    let test = m.select_rows(&[i]).impute(&means);
                    let ranking = match selector {
                        Some(s) => {
                            event(FoldStage::Select, train.ids());
                            Some(select::rank(s, &train, rank_seed)?)
                        }
                        None => None,
                    };
                    (train, test, ranking)
                }
            };
            Ok(Some(PreparedFold { train, test, ranking }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PreparedFolds {
        folds,
        matrix: m.clone(),
    })
}

/// Trains and scores `model` on every prepared fold, keeping the top
/// `proportion` of each fold's ranking.
pub fn evaluate_prepared(
    prepared: &PreparedFolds,
    proportion: f64,
    model: ModelKind,
    hook: Option<FoldHook<'_>>,
) -> Result<EvalReport, EvalError> {
    let hook: FoldHook<'_> = hook.unwrap_or(&no_hook);
    let m = &prepared.matrix;
    let scored = prepared
        .folds
        .par_iter()
        .enumerate()
        .map(|(i, fold)| -> Result<Option<(f64, usize)>, EvalError> {
            let Some(fold) = fold else { return Ok(None) };
            let (train, test) = match &fold.ranking {
                Some(r) => {
                    // Column order follows the matrix, not the ranking, so
                    // keeping every feature is the same as not selecting.
                    let mut keep = select::select_top(r, proportion)?;
                    keep.sort_by_key(|n| fold.train.column_index(n));
                    (fold.train.select_names(&keep)?, fold.test.select_names(&keep)?)
                }
                None => (fold.train.clone(), fold.test.clone()),
            };
            hook(&FoldEvent {
                fold: i,
                held_out: &m.ids()[i],
                stage: FoldStage::Train,
                fitted_on: train.ids(),
            });
            let fitted = models::train(model, &train)?;
            Ok(Some((fitted.score(test.row(0))?, train.n_cols())))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut predictions = Vec::with_capacity(m.n_rows());
    let mut excluded = Vec::new();
    let mut n_features = 0;
    for (i, s) in scored.into_iter().enumerate() {
        match s {
            Some((score, k)) => {
                n_features = k;
                predictions.push(Prediction {
                    participant_id: m.ids()[i].clone(),
                    label: m.labels()[i],
                    score,
                    predicted: (score > model.threshold()) as u8,
                });
            }
            None => {
                log::warn!("fold {} ({}) excluded: single-class training set", i + 1, m.ids()[i]);
                excluded.push(m.ids()[i].clone());
            }
        }
    }
    EvalReport::from_predictions(predictions, excluded, n_features)
}

/// Full LOOCV for one configuration.
pub fn loocv(m: &FeatureMatrix, cfg: &LoocvConfig) -> Result<EvalReport, EvalError> {
    loocv_with_hook(m, cfg, None)
}

pub fn loocv_with_hook(
    m: &FeatureMatrix,
    cfg: &LoocvConfig,
    hook: Option<FoldHook<'_>>,
) -> Result<EvalReport, EvalError> {
    select::top_k(m.n_cols(), cfg.proportion)?;
    let prepared = prepare_folds(m, cfg.selector, cfg.leak_compat, cfg.seed, hook)?;
    evaluate_prepared(&prepared, cfg.proportion, cfg.model, hook)
}

impl EvalReport {
    pub fn from_predictions(
        predictions: Vec<Prediction>,
        excluded: Vec<String>,
        n_features: usize,
    ) -> Result<EvalReport, EvalError> {
        let labels: Vec<u8> = predictions.iter().map(|p| p.label).collect();
        let predicted: Vec<u8> = predictions.iter().map(|p| p.predicted).collect();
        let scores: Vec<f64> = predictions.iter().map(|p| p.score).collect();
        let cm = ConfusionMatrix::from_predictions(&labels, &predicted);
        let metrics = metrics(&cm, &labels, &scores)?;
        let roc = roc_curve(&labels, &scores)?;
        Ok(EvalReport {
            cm,
            metrics,
            predictions,
            roc,
            excluded,
            n_features,
        })
    }
}
