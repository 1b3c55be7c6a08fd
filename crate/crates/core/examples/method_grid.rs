//! The 3 x 5 selector/model grid and the seven-way dataset ablation on a
//! synthetic cohort.

use skyselect::experiments::{ablation, method_grid, RunSettings, DEFAULT_PROPORTION};
use skyselect::features::extract_cohort;
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::{Cohort, DatasetCombo, FeatureRegistry, ModelKind, SelectorKind};

fn main() -> skyselect::Result<()> {
    let settings = RunSettings { seed: 7, leak_compat: false };
    // Boosting needs 20 rows per leaf, so much smaller cohorts leave it
    // with the class prior, which LOOCV always gets wrong.
    let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::new(23, 23, 7) };
    let participants = generate_records(&spec)?.into_iter().map(|(r, _)| r).collect();
    let m = extract_cohort(&Cohort { participants })?;
    let all = m.for_combo(&FeatureRegistry::standard(), DatasetCombo::ALL_GROUPS)?;

    let grid = method_grid(&all, DatasetCombo::ALL_GROUPS, DEFAULT_PROPORTION, settings)?;
    println!("{:<16} {:>6} {:>6} {:>5}", "pair", "acc", "auc", "rank");
    for cell in grid.ranked() {
        let r = &cell.report.metrics;
        println!("{:<16} {:>6.3} {:>6.3} {:>5}", cell.pair_label(), r.acc, r.auc, grid.acc_rank(cell));
    }

    let ab = ablation(&m, SelectorKind::Mic, ModelKind::Svm, DEFAULT_PROPORTION, settings)?;
    println!();
    for row in &ab.rows {
        println!("{:<16} {:>3} features  acc {:.3}", row.combo.label(), row.n_features, row.report.metrics.acc);
    }
    Ok(())
}
