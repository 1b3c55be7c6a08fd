//! Best score of each metric over the 15 selector/model pairs as the kept
//! share of features grows.

use skyselect::experiments::{proportion_sweep, RunSettings, SWEEP_METRICS, SWEEP_PROPORTIONS};
use skyselect::features::extract_cohort;
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::{Cohort, DatasetCombo, FeatureRegistry};

fn main() -> skyselect::Result<()> {
    let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::default() };
    let participants = generate_records(&spec)?.into_iter().map(|(r, _)| r).collect();
    let m = extract_cohort(&Cohort { participants })?.for_combo(&FeatureRegistry::standard(), DatasetCombo::ALL_GROUPS)?;
    let sweep = proportion_sweep(&m, &SWEEP_PROPORTIONS, RunSettings { seed: 7, leak_compat: false })?;

    print!("{:>5} {:>4}", "prop", "k");
    for name in SWEEP_METRICS {
        print!(" {name:>10}");
    }
    println!();
    for row in &sweep.rows {
        print!("{:>5.2} {:>4}", row.proportion, row.n_features);
        for b in &row.best {
            print!(" {:>10.4}", b.value);
        }
        println!();
    }
    if let Some(best) = sweep.best_acc() {
        println!("best accuracy {:.4} at {:.2} by {}", best.best[0].value, best.proportion, best.best[0].pair);
    }
    Ok(())
}
