mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use skyselect::experiments::{
    ablation, interpretability_report, method_grid, proportion_sweep, run_all, RunSettings, DEFAULT_PROPORTION,
    SELECTORS,
};
use skyselect::features::extract_cohort;
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::{Cohort, DatasetCombo, FeatureRegistry, ModelKind, SelectorKind};

const SETTINGS: RunSettings = RunSettings { seed: 7, leak_compat: false };

fn all_columns() -> skyselect::FeatureMatrix {
    common::small_matrix().for_combo(&FeatureRegistry::standard(), DatasetCombo::ALL_GROUPS).unwrap()
}

#[test]
fn grid_covers_the_full_cross_product() {
    let g = method_grid(&all_columns(), DatasetCombo::ALL_GROUPS, DEFAULT_PROPORTION, SETTINGS).unwrap();
    let got: BTreeSet<_> = g.cells.iter().map(|c| (c.selector, c.model)).collect();
    let want: BTreeSet<_> = SELECTORS.iter().flat_map(|&s| ModelKind::ALL.map(|m| (s, m))).collect();
    assert_eq!(g.cells.len(), 15);
    assert_eq!(got, want);
    let ranks: Vec<usize> = g.ranked().iter().map(|c| g.acc_rank(c)).collect();
    assert!(ranks.windows(2).all(|w| w[0] <= w[1]) && ranks[0] == 1, "{ranks:?}");
}

#[test]
fn ablation_rows_recompute_from_their_predictions() {
    let a = ablation(common::small_matrix(), SelectorKind::Mic, ModelKind::Svm, DEFAULT_PROPORTION, SETTINGS).unwrap();
    assert_eq!(a.rows.len(), 7);
    let mut csv = Vec::new();
    a.write_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    for (row, line) in a.rows.iter().zip(text.lines().skip(1)) {
        let m = row.report.recompute().unwrap();
        assert_eq!(m, row.report.metrics);
        let acc: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!((acc - m.acc).abs() < 1e-8, "{line}");
    }
}

#[test]
fn experiments_are_pure_functions_of_their_inputs() {
    let m = all_columns();
    let csv = |r: &skyselect::experiments::SweepResult| {
        let mut b = Vec::new();
        r.write_csv(&mut b).unwrap();
        b
    };
    let a = proportion_sweep(&m, &[0.25, 0.65], SETTINGS).unwrap();
    let b = proportion_sweep(&m, &[0.25, 0.65], SETTINGS).unwrap();
    assert_eq!(csv(&a), csv(&b));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let c = pool.install(|| proportion_sweep(&m, &[0.25, 0.65], SETTINGS).unwrap());
    assert_eq!(csv(&a), csv(&c));
}

#[test]
fn run_all_requires_the_registry_columns() {
    assert!(run_all(&all_columns().select_columns(&[0, 1, 2]), SETTINGS).is_err());
}

/// The seed-7 tree written by `reproduce`. Set `SKYSELECT_BLESS=1` to
/// rewrite the file after an intended change.
#[test]
fn seed_seven_tree_matches_golden_file() {
    let spec = CohortSpec::default();
    let cohort = Cohort { participants: generate_records(&spec).unwrap().into_iter().map(|(r, _)| r).collect() };
    let m = extract_cohort(&cohort).unwrap().for_combo(&FeatureRegistry::standard(), DatasetCombo::ALL_GROUPS).unwrap();
    let rendered = interpretability_report(&m, DEFAULT_PROPORTION, SETTINGS).unwrap().render();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/dtree_seed7.txt");
    if std::env::var_os("SKYSELECT_BLESS").is_some() {
        std::fs::write(&path, &rendered).unwrap();
    }
    let golden = std::fs::read_to_string(&path).expect("golden file");
    assert_eq!(rendered, golden);
}
