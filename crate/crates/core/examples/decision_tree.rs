//! Fit the interpretability tree on a synthetic cohort and print it as
//! Graphviz text with feature importances.

use skyselect::experiments::{interpretability_report, RunSettings};
use skyselect::features::extract_cohort;
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::{Cohort, DatasetCombo, FeatureRegistry};

fn main() -> skyselect::Result<()> {
    let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::new(15, 15, 7) };
    let participants = generate_records(&spec)?.into_iter().map(|(r, _)| r).collect();
    let m = extract_cohort(&Cohort { participants })?.for_combo(&FeatureRegistry::standard(), DatasetCombo::ALL_GROUPS)?;
    let report = interpretability_report(&m, 0.65, RunSettings { seed: 7, leak_compat: false })?;
    print!("{}", report.render());
    for (name, v) in &report.importances {
        println!("{name:<32} {v:.4}");
    }
    Ok(())
}
