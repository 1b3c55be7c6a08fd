//! Generate a small synthetic cohort on disk and load it back.
//!
//! `cargo run --example synth_cohort -- [out_dir]`

use skyselect::synth::{generate_cohort, CohortSpec};
use skyselect::telemetry::load_cohort;

fn main() -> skyselect::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "target/example-cohort".into());
    let spec = CohortSpec { gaze_hz: 60.0, ..CohortSpec::new(4, 4, 7) };
    let manifest = generate_cohort(&spec, out.as_ref())?;
    println!("manifest: {}", manifest.display());

    let cohort = load_cohort(&manifest)?;
    let (experts, novices) = cohort.class_counts();
    println!("{experts} experts, {novices} novices");
    for p in &cohort.participants {
        let flight_s = p.flight.last().map_or(0.0, |s| s.timestamp);
        println!(
            "{}  {:?}  {:>6} gaze rows  {:>5} flight rows  {:>6.1} s",
            p.participant_id,
            p.label,
            p.gaze.len(),
            p.flight.len(),
            flight_s
        );
    }
    Ok(())
}
