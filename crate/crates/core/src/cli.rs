//! `skyselect` command line.
//!
//! Exit codes: 0 on success, 1 for invalid invocations (unknown flags, bad
//! values), 2 for failures caused by input data (unreadable logs, a flight
//! that never lands, a single-class cohort).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::data::FeatureMatrix;
use crate::eval::{loocv, LoocvConfig};
use crate::experiments::{self, files, write_with, RunSettings, DEFAULT_PROPORTION, SWEEP_PROPORTIONS};
use crate::features::extract_cohort;
use crate::features::registry::{DatasetCombo, FeatureRegistry};
use crate::models::{self, ModelKind, TrainedModel};
use crate::select::{self, SelectorKind};
use crate::synth::{generate_cohort, CohortSpec};
use crate::telemetry::load_cohort;
use crate::{Error, Result};

const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(name = "skyselect", version, about = "Expert/novice pilot classification from flight-simulator logs")]
struct Cli {
    /// Worker threads (default: logical cores). Outputs do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Root seed for every random stage.
    #[arg(long, global = true, env = "SKYSELECT_SEED")]
    seed: Option<u64>,
    /// More log output on stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic cohort: per-participant gaze and flight CSVs plus a manifest.
    Synth(SynthArgs),
    /// Extract the feature table from a cohort manifest.
    Extract(ExtractArgs),
    /// Rank features and keep the top proportion.
    Select(SelectArgs),
    /// Fit one model on the whole feature table and save it as JSON.
    Train(TrainArgs),
    /// Leave-one-out evaluation of one selector + model configuration.
    Evaluate(EvaluateArgs),
    /// Best metrics per selection proportion over all 15 selector/model pairs.
    Sweep(SweepArgs),
    /// All 15 selector/model pairs at one proportion.
    Grid(GridArgs),
    /// One selector/model pair on each of the seven dataset combinations.
    Ablate(AblateArgs),
    /// Decision tree on MIC-selected features, fitted on all participants.
    Interpret(InterpretArgs),
    /// Novice vs expert t-tests on selected features.
    Stats(StatsArgs),
    /// Synthesize a cohort and run every experiment on it.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 23)]
    experts: usize,
    #[arg(long, default_value_t = 23)]
    novices: usize,
    #[arg(long, default_value_t = 120.0)]
    gaze_hz: f64,
    #[arg(long, default_value_t = 30.0)]
    flight_hz: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

/// Feature table input shared by the analysis commands.
#[derive(Debug, Args)]
struct TableArgs {
    /// Feature CSV written by `extract`.
    #[arg(long)]
    features: PathBuf,
    /// Dataset combination: aoi, em, qar, any `_`/`,`/`+` join of them, or all.
    #[arg(long, default_value = "all")]
    combo: DatasetCombo,
}

#[derive(Debug, Args)]
struct SelectArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, default_value = "mic")]
    method: SelectorKind,
    #[arg(long, default_value_t = DEFAULT_PROPORTION)]
    proportion: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, default_value = "svm")]
    model: ModelKind,
    /// Rank on the full table and keep the top proportion before fitting.
    #[arg(long)]
    selector: Option<SelectorKind>,
    #[arg(long, default_value_t = DEFAULT_PROPORTION)]
    proportion: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, default_value = "svm")]
    model: ModelKind,
    /// Omit to use every column.
    #[arg(long)]
    selector: Option<SelectorKind>,
    #[arg(long, default_value_t = DEFAULT_PROPORTION)]
    proportion: f64,
    /// Fit imputation and ranking once on all rows (leaks the held-out row).
    #[arg(long)]
    leak_compat: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    features: PathBuf,
    /// Comma-separated proportions (default 0.15,0.25,...,0.95).
    #[arg(long, value_delimiter = ',')]
    proportions: Option<Vec<f64>>,
    #[arg(long)]
    leak_compat: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, default_value_t = DEFAULT_PROPORTION)]
    proportion: f64,
    #[arg(long)]
    leak_compat: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AblateArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long, default_value = "mic")]
    selector: SelectorKind,
    #[arg(long, default_value = "svm")]
    model: ModelKind,
    #[arg(long, default_value_t = DEFAULT_PROPORTION)]
    proportion: f64,
    #[arg(long)]
    leak_compat: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct InterpretArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, default_value_t = DEFAULT_PROPORTION)]
    proportion: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    features: PathBuf,
    /// Feature to compare; repeatable. Defaults to the eight headline indicators.
    #[arg(long = "feature")]
    feature: Vec<String>,
    /// Also write stats.csv here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(long, default_value_t = 23)]
    experts: usize,
    #[arg(long, default_value_t = 23)]
    novices: usize,
    #[arg(long)]
    leak_compat: bool,
    #[arg(long)]
    out: PathBuf,
}

/// Parse `argv` (program name first), run the command and return the exit
/// code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .format_timestamp(None)
        .try_init();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return 1;
        }
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 2;
        }
    };
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match pool.install(|| dispatch(cli.command, seed)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            if e.is_data_error() {
                2
            } else {
                1
            }
        }
    }
}

fn load_table(t: &TableArgs) -> Result<FeatureMatrix> {
    let m = FeatureMatrix::read_csv_file(&t.features)?;
    if t.combo == DatasetCombo::ALL_GROUPS {
        return Ok(m);
    }
    m.for_combo(&FeatureRegistry::standard(), t.combo)
}

fn check_proportion(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Config(format!("--proportion {p} is outside (0, 1]")));
    }
    Ok(())
}

fn dispatch(command: Command, seed: u64) -> Result<()> {
    match command {
        Command::Synth(a) => {
            let spec = CohortSpec {
                gaze_hz: a.gaze_hz,
                flight_hz: a.flight_hz,
                ..CohortSpec::new(a.experts, a.novices, seed)
            };
            let manifest = generate_cohort(&spec, &a.out)?;
            println!("{}", manifest.display());
        }
        Command::Extract(a) => {
            let cohort = load_cohort(&a.manifest)?;
            let m = extract_cohort(&cohort)?;
            m.write_csv_file(a.out.join(files::FEATURES))?;
            write_with(&a.out.join("combos.csv"), write_combos)?;
            println!("{} participants x {} features", m.n_rows(), m.n_cols());
        }
        Command::Select(a) => {
            check_proportion(a.proportion)?;
            let m = load_table(&a.table)?;
            let imputed = m.impute(&m.column_means());
            let ranked = select::rank(a.method, &imputed, crate::eval::loocv::ranker_seed(seed))?;
            let keep = select::select_top(&ranked, a.proportion)?;
            write_with(&a.out.join("ranking.csv"), |b| ranked.write_csv(b))?;
            write_with(&a.out.join("selected.txt"), |b| {
                keep.iter().try_for_each(|n| writeln!(b, "{n}"))
            })?;
            println!("kept {} of {} features", keep.len(), m.n_cols());
        }
        Command::Train(a) => {
            check_proportion(a.proportion)?;
            let m = load_table(&a.table)?;
            let imputed = m.impute(&m.column_means());
            let m = match a.selector {
                Some(s) => {
                    let ranked = select::rank(s, &imputed, crate::eval::loocv::ranker_seed(seed))?;
                    let mut keep = select::select_top(&ranked, a.proportion)?;
                    keep.sort_by_key(|n| imputed.column_index(n));
                    imputed.select_names(&keep)?
                }
                None => imputed,
            };
            let model: TrainedModel = models::train(a.model, &m)?;
            let path = a.out.join("model.json");
            std::fs::create_dir_all(&a.out).map_err(|e| Error::io(&a.out, e))?;
            model.save(&path)?;
            println!("{}", path.display());
        }
        Command::Evaluate(a) => {
            check_proportion(a.proportion)?;
            let m = load_table(&a.table)?;
            let cfg = LoocvConfig {
                selector: a.selector,
                proportion: a.proportion,
                model: a.model,
                leak_compat: a.leak_compat,
                seed,
            };
            let r = loocv(&m, &cfg)?;
            write_with(&a.out.join("metrics.csv"), |b| r.write_metrics_csv(b))?;
            write_with(&a.out.join("predictions.csv"), |b| r.write_predictions_csv(b))?;
            write_with(&a.out.join("roc.csv"), |b| r.write_roc_csv(b))?;
            let settings = RunSettings { seed, leak_compat: a.leak_compat };
            experiments::write_provenance(&a.out, &experiments::Provenance::new("evaluate", settings))?;
            let x = &r.metrics;
            println!("acc {:.4}  f1 {:.4}  auc {:.4}  precision {:.4}  recall {:.4}", x.acc, x.f1, x.auc, x.precision, x.recall);
        }
        Command::Sweep(a) => {
            let m = FeatureMatrix::read_csv_file(&a.features)?;
            let props = a.proportions.unwrap_or_else(|| SWEEP_PROPORTIONS.to_vec());
            props.iter().try_for_each(|p| check_proportion(*p))?;
            let settings = RunSettings { seed, leak_compat: a.leak_compat };
            let r = experiments::proportion_sweep(&m, &props, settings)?;
            experiments::write_sweep(&a.out, &r)?;
            experiments::write_provenance(&a.out, &r.provenance)?;
            if let Some(b) = r.best_acc() {
                println!("best acc {:.4} at proportion {:.2} ({})", b.best[0].value, b.proportion, b.best[0].pair);
            }
        }
        Command::Grid(a) => {
            check_proportion(a.proportion)?;
            let m = load_table(&a.table)?;
            let settings = RunSettings { seed, leak_compat: a.leak_compat };
            let r = experiments::method_grid(&m, a.table.combo, a.proportion, settings)?;
            experiments::write_grid(&a.out, &r)?;
            experiments::write_provenance(&a.out, &r.provenance)?;
            for c in r.ranked().into_iter().take(5) {
                println!("{:<12} acc {:.4}  auc {:.4}", c.pair_label(), c.report.metrics.acc, c.report.metrics.auc);
            }
        }
        Command::Ablate(a) => {
            check_proportion(a.proportion)?;
            let m = FeatureMatrix::read_csv_file(&a.features)?;
            let settings = RunSettings { seed, leak_compat: a.leak_compat };
            let r = experiments::ablation(&m, a.selector, a.model, a.proportion, settings)?;
            experiments::write_ablation(&a.out, &r)?;
            experiments::write_provenance(&a.out, &r.provenance)?;
            for row in &r.rows {
                println!("{:<16} acc {:.4}  auc {:.4}", row.combo.label(), row.report.metrics.acc, row.report.metrics.auc);
            }
        }
        Command::Interpret(a) => {
            check_proportion(a.proportion)?;
            let m = load_table(&a.table)?;
            let settings = RunSettings { seed, leak_compat: false };
            let r = experiments::interpretability_report(&m, a.proportion, settings)?;
            experiments::write_tree_report(&a.out, &r)?;
            experiments::write_provenance(&a.out, &r.provenance)?;
            for (name, v) in r.importances.iter().take(5) {
                println!("{name:<40} {v:.4}");
            }
        }
        Command::Stats(a) => {
            let m = FeatureMatrix::read_csv_file(&a.features)?;
            let names: Vec<&str> = if a.feature.is_empty() {
                experiments::INDICATORS.to_vec()
            } else {
                a.feature.iter().map(String::as_str).collect()
            };
            let rows = experiments::group_stats(&m, &names)?;
            println!("{:<40} {:>22} {:>22} {:>9} {:>6}", "feature", "novice", "expert", "t", "d");
            for r in &rows {
                println!(
                    "{:<40} {:>22} {:>22} {:>8.2}{:1} {:>6.2}",
                    r.feature,
                    format!("{:.2} ({:.2})", r.novice.mean, r.novice.sd),
                    format!("{:.2} ({:.2})", r.expert.mean, r.expert.sd),
                    r.test.t,
                    r.test.stars(),
                    r.test.cohen_d
                );
            }
            if let Some(out) = a.out {
                experiments::write_stats(&out, &rows)?;
            }
        }
        Command::Reproduce(a) => {
            let spec = CohortSpec::new(a.experts, a.novices, seed);
            let (_, r) = experiments::reproduce(&spec, &a.out, a.leak_compat)?;
            if let Some(c) = r.grid.get(SelectorKind::Mic, ModelKind::Svm) {
                println!("SVM+MIC acc {:.4}  auc {:.4}", c.report.metrics.acc, c.report.metrics.auc);
            }
            println!("{}", a.out.join(files::SUMMARY).display());
        }
    }
    Ok(())
}

/// `combo,label,n_features,features` with feature names joined by `;`.
fn write_combos(out: &mut Vec<u8>) -> std::io::Result<()> {
    let reg = FeatureRegistry::standard();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["combo", "label", "n_features", "features"])?;
    for c in DatasetCombo::ALL {
        let names = reg.names_for(c);
        w.write_record([c.name(), c.label(), names.len().to_string(), names.join(";")])?;
    }
    w.flush()
}

/// Convenience for tests and examples: run with string arguments.
pub fn run_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    let mut argv: Vec<OsString> = vec!["skyselect".into()];
    argv.extend(args.into_iter().map(Into::into));
    run(argv)
}
