//! Novice vs expert t-tests, from printed summaries and from a synthetic
//! cohort's feature table.

use skyselect::experiments::{group_stats, INDICATORS};
use skyselect::features::extract_cohort;
use skyselect::stats::{t_test, GroupSummary};
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::Cohort;

fn main() -> skyselect::Result<()> {
    // Mean distance to the reference path, 23 per group.
    let novice = GroupSummary::new(23, 873.89, 818.43).unwrap();
    let expert = GroupSummary::new(23, 176.67, 205.52).unwrap();
    let r = t_test(&novice, &expert);
    println!("t({}) = {:.2}, p = {:.4}, d = {:.2}", r.df, r.t, r.p, r.cohen_d);

    let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::new(23, 23, 7) };
    let participants = generate_records(&spec)?.into_iter().map(|(r, _)| r).collect();
    let m = extract_cohort(&Cohort { participants })?;
    println!("{:<34} {:>10} {:>10} {:>7} {:>7}", "feature", "novice", "expert", "t", "p");
    for row in group_stats(&m, &INDICATORS)? {
        println!(
            "{:<34} {:>10.2} {:>10.2} {:>7.2} {:>7.4}{}",
            row.feature,
            row.novice.mean,
            row.expert.mean,
            row.test.t,
            row.test.p,
            row.test.stars()
        );
    }
    Ok(())
}
