//! The three studies (proportion sweep, selector x model grid, dataset
//! ablation), the single-tree interpretability report, group statistics and
//! the one-shot `reproduce` run that chains them.
//!
//! Every function here is a pure function of the feature matrix, the seed
//! and the leak flag. Cells run in parallel; results are assembled in the
//! canonical order (proportion, selector, model, combo) so output bytes do
//! not depend on the thread count.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::data::FeatureMatrix;
use crate::eval::{evaluate_prepared, prepare_folds, EvalReport, PreparedFolds, METRICS_HEADER};
use crate::features::registry::{DatasetCombo, FeatureRegistry};
use crate::features::extract_cohort;
use crate::models::tree::{importance_table, to_dot, train_dtree, DecisionTree};
use crate::models::ModelKind;
use crate::numfmt::sig9;
use crate::select::{self, SelectorKind};
use crate::stats::{t_test_raw, GroupSummary, TTest};
use crate::synth::{generate_cohort, CohortSpec};
use crate::telemetry::load_cohort;
use crate::{Error, Result};

/// Proportions of the sweep: 15% to 95% in steps of 10%.
pub const SWEEP_PROPORTIONS: [f64; 9] = [0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95];
/// Proportion used by the grid, the ablation and the tree report.
pub const DEFAULT_PROPORTION: f64 = 0.65;

pub const SELECTORS: [SelectorKind; 3] = [SelectorKind::Mic, SelectorKind::SvmRfe, SelectorKind::Rf];

/// Metrics compared by the sweep, in output order.
pub const SWEEP_METRICS: [&str; 5] = ["acc", "f1", "auc", "precision", "recall"];

/// Settings shared by every experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSettings {
    pub seed: u64,
    /// Fit imputation and rankings on all rows instead of per fold.
    pub leak_compat: bool,
}

/// Provenance block written next to experiment outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub command: String,
    pub seed: u64,
    pub leak_compat: bool,
    pub registry_digest: String,
    pub version: String,
}

impl Provenance {
    pub fn new(command: &str, settings: RunSettings) -> Self {
        Provenance {
            command: command.to_string(),
            seed: settings.seed,
            leak_compat: settings.leak_compat,
            registry_digest: FeatureRegistry::standard().digest(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn render(&self) -> String {
        format!(
            "command: {}\nseed: {}\nleak_compat: {}\nfeature_registry_sha256: {}\nversion: skyselect {}\n",
            self.command, self.seed, self.leak_compat, self.registry_digest, self.version
        )
    }
}

/// One evaluated configuration.
#[derive(Debug, Clone)]
pub struct GridCell {
    pub selector: SelectorKind,
    pub model: ModelKind,
    pub proportion: f64,
    pub combo: DatasetCombo,
    pub report: EvalReport,
}

impl GridCell {
    pub fn pair_label(&self) -> String {
        format!("{}+{}", self.model.label(), self.selector.label())
    }
}

#[derive(Debug, Clone)]
pub struct GridResult {
    /// Canonical order: selector, then model.
    pub cells: Vec<GridCell>,
    pub provenance: Provenance,
}

impl GridResult {
    pub fn get(&self, selector: SelectorKind, model: ModelKind) -> Option<&GridCell> {
        self.cells.iter().find(|c| c.selector == selector && c.model == model)
    }

    /// 1 + number of cells with strictly higher accuracy.
    pub fn acc_rank(&self, cell: &GridCell) -> usize {
        1 + self.cells.iter().filter(|c| c.report.metrics.acc > cell.report.metrics.acc).count()
    }

    /// Cells sorted by Acc, then AUC, then F1 (descending); canonical order
    /// breaks remaining ties.
    pub fn ranked(&self) -> Vec<&GridCell> {
        let mut v: Vec<&GridCell> = self.cells.iter().collect();
        v.sort_by(|a, b| {
            let (x, y) = (&a.report.metrics, &b.report.metrics);
            y.acc.total_cmp(&x.acc).then(y.auc.total_cmp(&x.auc)).then(y.f1.total_cmp(&x.f1))
        });
        v
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["selector", "model", "proportion", "combo", "n_features"];
        header.extend(METRICS_HEADER);
        header.push("acc_rank");
        w.write_record(&header)?;
        for c in &self.cells {
            let mut row = vec![
                c.selector.key().to_string(),
                c.model.key().to_string(),
                sig9(c.proportion),
                c.combo.name(),
                c.report.n_features.to_string(),
            ];
            row.extend(c.report.metric_cells());
            row.push(self.acc_rank(c).to_string());
            w.write_record(&row)?;
        }
        w.flush()
    }
}

fn prepare_all(m: &FeatureMatrix, settings: RunSettings) -> Result<Vec<PreparedFolds>> {
    SELECTORS
        .par_iter()
        .map(|s| prepare_folds(m, Some(*s), settings.leak_compat, settings.seed, None).map_err(Error::from))
        .collect()
}

fn run_cells(
    prepared: &[PreparedFolds],
    proportions: &[f64],
    combo: DatasetCombo,
) -> Result<Vec<GridCell>> {
    let mut jobs = Vec::new();
    for &p in proportions {
        for (si, &selector) in SELECTORS.iter().enumerate() {
            for model in ModelKind::ALL {
                jobs.push((p, si, selector, model));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(proportion, si, selector, model)| {
            let report = evaluate_prepared(&prepared[si], proportion, model, None)?;
            Ok(GridCell { selector, model, proportion, combo, report })
        })
        .collect()
}

fn check_proportions(proportions: &[f64], m: &FeatureMatrix) -> Result<()> {
    if proportions.is_empty() {
        return Err(Error::Config("no proportions given".into()));
    }
    for &p in proportions {
        select::top_k(m.n_cols(), p).map_err(|e| Error::Config(e.to_string()))?;
    }
    Ok(())
}

/// All 15 selector x model pairs on `m` at `proportion`.
pub fn method_grid(m: &FeatureMatrix, combo: DatasetCombo, proportion: f64, settings: RunSettings) -> Result<GridResult> {
    check_proportions(&[proportion], m)?;
    let prepared = prepare_all(m, settings)?;
    let cells = run_cells(&prepared, &[proportion], combo)?;
    Ok(GridResult { cells, provenance: Provenance::new("grid", settings) })
}

/// Best value of one metric at one proportion and the pair that reached it
/// first in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct BestMetric {
    pub value: f64,
    pub pair: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub proportion: f64,
    pub n_features: usize,
    /// In [`SWEEP_METRICS`] order.
    pub best: Vec<BestMetric>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Every evaluated cell, for inspection.
    pub cells: Vec<GridCell>,
    pub provenance: Provenance,
}

impl SweepResult {
    /// Proportion with the highest best-accuracy; the lowest such
    /// proportion on ties.
    pub fn best_acc(&self) -> Option<&SweepRow> {
        self.rows.iter().fold(None, |best: Option<&SweepRow>, r| match best {
            Some(b) if b.best[0].value >= r.best[0].value => Some(b),
            _ => Some(r),
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["proportion".to_string(), "n_features".to_string()];
        for m in SWEEP_METRICS {
            header.push(format!("best_{m}"));
            header.push(format!("best_{m}_model"));
        }
        w.write_record(&header)?;
        for r in &self.rows {
            let mut row = vec![sig9(r.proportion), r.n_features.to_string()];
            for b in &r.best {
                row.push(sig9(b.value));
                row.push(b.pair.clone());
            }
            w.write_record(&row)?;
        }
        w.flush()
    }
}

fn metric_value(r: &EvalReport, k: usize) -> f64 {
    let m = &r.metrics;
    [m.acc, m.f1, m.auc, m.precision, m.recall][k]
}

/// For each proportion, the best value of each metric over all 15 pairs.
/// Each metric is maximized independently.
pub fn proportion_sweep(m: &FeatureMatrix, proportions: &[f64], settings: RunSettings) -> Result<SweepResult> {
    check_proportions(proportions, m)?;
    let prepared = prepare_all(m, settings)?;
    let cells = run_cells(&prepared, proportions, DatasetCombo::ALL_GROUPS)?;
    let per = SELECTORS.len() * ModelKind::ALL.len();
    let rows = proportions
        .iter()
        .zip(cells.chunks(per))
        .map(|(&proportion, chunk)| {
            let best = (0..SWEEP_METRICS.len())
                .map(|k| {
                    let top = chunk
                        .iter()
                        .fold(None, |best: Option<&GridCell>, c| match best {
                            Some(b) if metric_value(&b.report, k) >= metric_value(&c.report, k) => Some(b),
                            _ => Some(c),
                        })
                        .unwrap();
                    BestMetric { value: metric_value(&top.report, k), pair: top.pair_label() }
                })
                .collect();
            SweepRow {
                proportion,
                n_features: select::top_k(m.n_cols(), proportion).unwrap_or(0),
                best,
            }
        })
        .collect();
    Ok(SweepResult { rows, cells, provenance: Provenance::new("sweep", settings) })
}

#[derive(Debug, Clone)]
pub struct AblationRow {
    pub combo: DatasetCombo,
    pub n_features: usize,
    pub report: EvalReport,
}

#[derive(Debug, Clone)]
pub struct AblationResult {
    pub selector: SelectorKind,
    pub model: ModelKind,
    pub proportion: f64,
    /// In [`DatasetCombo::ALL`] order.
    pub rows: Vec<AblationRow>,
    pub provenance: Provenance,
}

impl AblationResult {
    pub fn get(&self, combo: DatasetCombo) -> Option<&AblationRow> {
        self.rows.iter().find(|r| r.combo == combo)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["combo", "label", "n_features", "n_selected"];
        header.extend(METRICS_HEADER);
        w.write_record(&header)?;
        for r in &self.rows {
            let mut row = vec![
                r.combo.name(),
                r.combo.label(),
                r.n_features.to_string(),
                r.report.n_features.to_string(),
            ];
            row.extend(r.report.metric_cells());
            w.write_record(&row)?;
        }
        w.flush()
    }
}

/// One selector + model on each of the seven dataset combinations.
/// `m` must hold every registry column.
pub fn ablation(
    m: &FeatureMatrix,
    selector: SelectorKind,
    model: ModelKind,
    proportion: f64,
    settings: RunSettings,
) -> Result<AblationResult> {
    check_proportions(&[proportion], m)?;
    let registry = FeatureRegistry::standard();
    let rows = DatasetCombo::ALL
        .par_iter()
        .map(|&combo| -> Result<AblationRow> {
            let sub = m.for_combo(&registry, combo)?;
            let prepared = prepare_folds(&sub, Some(selector), settings.leak_compat, settings.seed, None)?;
            let report = evaluate_prepared(&prepared, proportion, model, None)?;
            Ok(AblationRow { combo, n_features: sub.n_cols(), report })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AblationResult { selector, model, proportion, rows, provenance: Provenance::new("ablate", settings) })
}

/// A single decision tree fitted on the full cohort after MIC selection.
#[derive(Debug, Clone)]
pub struct TreeReport {
    pub selected: Vec<String>,
    pub tree: DecisionTree,
    /// Used features, most important first.
    pub importances: Vec<(String, f64)>,
    pub provenance: Provenance,
}

impl TreeReport {
    /// Graphviz text with a comment header.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "// Decision tree fitted on all participants (not cross-validated).");
        let _ = writeln!(s, "// Features: top {} by MIC; depth {}, {} leaves.", self.selected.len(), self.tree.depth(), self.tree.n_leaves());
        s.push_str(&to_dot(&self.tree, &self.selected));
        s
    }

    pub fn write_importances_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["rank", "feature", "importance"])?;
        for (i, (name, v)) in self.importances.iter().enumerate() {
            w.write_record([(i + 1).to_string(), name.clone(), sig9(*v)])?;
        }
        w.flush()
    }
}

pub fn interpretability_report(m: &FeatureMatrix, proportion: f64, settings: RunSettings) -> Result<TreeReport> {
    check_proportions(&[proportion], m)?;
    let imputed = m.impute(&m.column_means());
    let ranking = select::mic_rank(&imputed)?;
    let mut selected = select::select_top(&ranking, proportion)?;
    selected.sort_by_key(|n| imputed.column_index(n));
    let sub = imputed.select_names(&selected)?;
    let tree = train_dtree(sub.rows(), sub.labels());
    let importances = importance_table(&tree, &selected);
    Ok(TreeReport { selected, tree, importances, provenance: Provenance::new("interpret", settings) })
}

/// Features compared between groups by default: the four flight indicators
/// and the four most-read flight instruments.
pub const INDICATORS: [&str; 8] = [
    "qar.total_flight_time",
    "qar.pitch_1s",
    "qar.dist_err_mean",
    "qar.dist_err_sd",
    "aoi.airspeed_indicator",
    "aoi.attitude_indicator",
    "aoi.vertical_speed_indicator",
    "aoi.altitude_indicator",
];

/// Novice vs expert comparison of one feature.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub feature: String,
    pub novice: GroupSummary,
    pub expert: GroupSummary,
    /// Novice minus expert.
    pub test: TTest,
}

pub fn group_stats(m: &FeatureMatrix, features: &[&str]) -> Result<Vec<StatsRow>> {
    features
        .iter()
        .map(|&name| {
            let j = m
                .column_index(name)
                .ok_or_else(|| Error::Config(format!("unknown feature `{name}`")))?;
            let col = m.column(j);
            let pick = |label: u8| -> Vec<f64> {
                col.iter()
                    .zip(m.labels())
                    .filter(|(v, l)| **l == label && v.is_finite())
                    .map(|(v, _)| *v)
                    .collect()
            };
            let (novice, expert) = (pick(0), pick(1));
            let test = t_test_raw(&novice, &expert)?;
            Ok(StatsRow {
                feature: name.to_string(),
                novice: GroupSummary::from_samples(&novice)?,
                expert: GroupSummary::from_samples(&expert)?,
                test,
            })
        })
        .collect()
}

pub fn write_stats_csv<W: Write>(rows: &[StatsRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "feature", "novice_n", "novice_mean", "novice_sd", "expert_n", "expert_mean", "expert_sd", "t", "df", "p", "sig", "cohen_d",
    ])?;
    for r in rows {
        w.write_record([
            r.feature.clone(),
            r.novice.n.to_string(),
            sig9(r.novice.mean),
            sig9(r.novice.sd),
            r.expert.n.to_string(),
            sig9(r.expert.mean),
            sig9(r.expert.sd),
            sig9(r.test.t),
            sig9(r.test.df),
            sig9(r.test.p),
            r.test.stars().to_string(),
            sig9(r.test.cohen_d),
        ])?;
    }
    w.flush()
}

/// "mean (sd)" to two decimals.
fn mean_sd(g: &GroupSummary) -> String {
    format!("{:.2} ({:.2})", g.mean, g.sd)
}

/// Output file names inside an experiment directory.
pub mod files {
    pub const FEATURES: &str = "features.csv";
    pub const SWEEP: &str = "sweep.csv";
    pub const GRID: &str = "grid.csv";
    pub const ABLATION: &str = "ablation.csv";
    pub const ROC_DIR: &str = "roc";
    pub const PREDICTIONS_DIR: &str = "predictions";
    pub const DTREE: &str = "dtree.txt";
    pub const IMPORTANCES: &str = "importances.csv";
    pub const STATS: &str = "stats.csv";
    pub const PROVENANCE: &str = "provenance.txt";
    pub const SUMMARY: &str = "summary.md";
    pub const COHORT_DIR: &str = "cohort";
}

pub(crate) fn write_with(path: &Path, f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut buf = Vec::new();
    f(&mut buf).map_err(|e| Error::io(path, e))?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn write_sweep(dir: &Path, r: &SweepResult) -> Result<()> {
    write_with(&dir.join(files::SWEEP), |b| r.write_csv(b))
}

pub fn write_grid(dir: &Path, r: &GridResult) -> Result<()> {
    write_with(&dir.join(files::GRID), |b| r.write_csv(b))
}

/// `ablation.csv` plus `roc/<combo>.csv` and `predictions/<combo>.csv`.
pub fn write_ablation(dir: &Path, r: &AblationResult) -> Result<()> {
    write_with(&dir.join(files::ABLATION), |b| r.write_csv(b))?;
    for row in &r.rows {
        let name = format!("{}.csv", row.combo.name());
        write_with(&dir.join(files::ROC_DIR).join(&name), |b| row.report.write_roc_csv(b))?;
        write_with(&dir.join(files::PREDICTIONS_DIR).join(&name), |b| row.report.write_predictions_csv(b))?;
    }
    Ok(())
}

pub fn write_tree_report(dir: &Path, r: &TreeReport) -> Result<()> {
    write_with(&dir.join(files::DTREE), |b| b.write_all(r.render().as_bytes()))?;
    write_with(&dir.join(files::IMPORTANCES), |b| r.write_importances_csv(b))
}

pub fn write_stats(dir: &Path, rows: &[StatsRow]) -> Result<()> {
    write_with(&dir.join(files::STATS), |b| write_stats_csv(rows, b))
}

pub fn write_provenance(dir: &Path, p: &Provenance) -> Result<()> {
    write_with(&dir.join(files::PROVENANCE), |b| b.write_all(p.render().as_bytes()))
}

/// Everything `reproduce` computed.
#[derive(Debug, Clone)]
pub struct Reproduction {
    pub features: FeatureMatrix,
    pub sweep: SweepResult,
    pub grid: GridResult,
    pub ablation: AblationResult,
    pub tree: TreeReport,
    pub stats: Vec<StatsRow>,
    pub provenance: Provenance,
}

/// Markdown summary of a reproduction run.
pub fn summary_markdown(r: &Reproduction) -> String {
    let mut s = String::new();
    let (pos, neg) = r.features.class_counts();
    let _ = writeln!(s, "# skyselect reproduction\n");
    let _ = writeln!(s, "Seed {}, {} experts and {} novices, {} features, leak_compat = {}.\n", r.provenance.seed, pos, neg, r.features.n_cols(), r.provenance.leak_compat);

    let _ = writeln!(s, "## Group differences (novice vs expert)\n");
    let _ = writeln!(s, "| feature | novice | expert | t | p | d |");
    let _ = writeln!(s, "|---|---|---|---|---|---|");
    for row in &r.stats {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {:.2}{} | {:.4} | {:.2} |",
            row.feature,
            mean_sd(&row.novice),
            mean_sd(&row.expert),
            row.test.t,
            row.test.stars(),
            row.test.p,
            row.test.cohen_d
        );
    }

    let _ = writeln!(s, "\n## Proportion sweep (best over 15 pairs, AOI & EM & QAR)\n");
    let _ = writeln!(s, "| proportion | features | Acc | F1 | AUC | Precision | Recall |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for row in &r.sweep.rows {
        let cells: Vec<String> = row.best.iter().map(|b| format!("{:.4}", b.value)).collect();
        let _ = writeln!(s, "| {:.2} | {} | {} |", row.proportion, row.n_features, cells.join(" | "));
    }
    if let Some(best) = r.sweep.best_acc() {
        let _ = writeln!(s, "\nBest accuracy {:.4} at proportion {:.2} ({}).", best.best[0].value, best.proportion, best.best[0].pair);
    }

    let _ = writeln!(s, "\n## Method grid at {:.2} (ranked by Acc, AUC, F1)\n", DEFAULT_PROPORTION);
    let _ = writeln!(s, "| rank | model | Acc | AUC | F1 | Precision | Recall |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for (i, c) in r.grid.ranked().into_iter().enumerate() {
        let m = &c.report.metrics;
        let _ = writeln!(s, "| {} | {} | {:.4} | {:.4} | {:.4} | {:.4} | {:.4} |", i + 1, c.pair_label(), m.acc, m.auc, m.f1, m.precision, m.recall);
    }

    let _ = writeln!(s, "\n## Ablation ({}+{} at {:.2})\n", r.ablation.model.label(), r.ablation.selector.label(), r.ablation.proportion);
    let _ = writeln!(s, "| dataset | features | Acc | F1 | AUC | Precision | Recall |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for row in &r.ablation.rows {
        let m = &row.report.metrics;
        let _ = writeln!(s, "| {} | {} | {:.4} | {:.4} | {:.4} | {:.4} | {:.4} |", row.combo.label(), row.n_features, m.acc, m.f1, m.auc, m.precision, m.recall);
    }

    let _ = writeln!(s, "\n## Decision tree (fitted on all participants)\n");
    let _ = writeln!(s, "| rank | feature | importance |");
    let _ = writeln!(s, "|---|---|---|");
    for (i, (name, v)) in r.tree.importances.iter().enumerate() {
        let _ = writeln!(s, "| {} | {} | {:.4} |", i + 1, name, v);
    }
    s
}

/// Every experiment on an extracted feature matrix, without touching disk.
pub fn run_all(m: &FeatureMatrix, settings: RunSettings) -> Result<Reproduction> {
    let registry = FeatureRegistry::standard();
    if m.names() != registry.names().as_slice() {
        return Err(Error::Matrix("feature table does not match the registry columns".into()));
    }
    let all = m.for_combo(&registry, DatasetCombo::ALL_GROUPS)?;
    log::info!("proportion sweep");
    let sweep = proportion_sweep(&all, &SWEEP_PROPORTIONS, settings)?;
    log::info!("method grid");
    let grid = method_grid(&all, DatasetCombo::ALL_GROUPS, DEFAULT_PROPORTION, settings)?;
    log::info!("ablation");
    let ablation = ablation(m, SelectorKind::Mic, ModelKind::Svm, DEFAULT_PROPORTION, settings)?;
    log::info!("decision tree");
    let tree = interpretability_report(&all, DEFAULT_PROPORTION, settings)?;
    let stats = group_stats(m, &INDICATORS)?;
    Ok(Reproduction {
        features: m.clone(),
        sweep,
        grid,
        ablation,
        tree,
        stats,
        provenance: Provenance::new("reproduce", settings),
    })
}

/// Write every artifact of a reproduction under `dir`.
pub fn write_reproduction(dir: &Path, r: &Reproduction) -> Result<()> {
    r.features.write_csv_file(dir.join(files::FEATURES))?;
    write_sweep(dir, &r.sweep)?;
    write_grid(dir, &r.grid)?;
    write_ablation(dir, &r.ablation)?;
    write_tree_report(dir, &r.tree)?;
    write_stats(dir, &r.stats)?;
    write_provenance(dir, &r.provenance)?;
    write_with(&dir.join(files::SUMMARY), |b| b.write_all(summary_markdown(r).as_bytes()))
}

/// Synthesize a cohort under `out/cohort`, extract features from the written
/// files and run every experiment.
pub fn reproduce(spec: &CohortSpec, out: &Path, leak_compat: bool) -> Result<(PathBuf, Reproduction)> {
    let settings = RunSettings { seed: spec.seed, leak_compat };
    log::info!("generating {} + {} participants", spec.n_expert, spec.n_novice);
    let manifest = generate_cohort(spec, &out.join(files::COHORT_DIR))?;
    let cohort = load_cohort(&manifest)?;
    let m = extract_cohort(&cohort)?;
    let r = run_all(&m, settings)?;
    write_reproduction(out, &r)?;
    Ok((manifest, r))
}
