//! Rank the 63 features of a synthetic cohort with each selector and keep
//! the top 15%.

use skyselect::features::extract_cohort;
use skyselect::select::{rank, select_top};
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::{Cohort, SelectorKind};

fn main() -> skyselect::Result<()> {
    let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::new(10, 10, 7) };
    let participants = generate_records(&spec)?.into_iter().map(|(r, _)| r).collect();
    let m = extract_cohort(&Cohort { participants })?;
    let m = m.impute(&m.column_means());

    for kind in [SelectorKind::Mic, SelectorKind::SvmRfe, SelectorKind::Rf] {
        let ranked = rank(kind, &m, 7)?;
        let keep = select_top(&ranked, 0.15)?;
        println!("{} keeps {} of {}:", kind.label(), keep.len(), ranked.len());
        for (name, score) in ranked.entries.iter().take(keep.len()) {
            println!("  {name:<32} {score:.4}");
        }
    }
    Ok(())
}
