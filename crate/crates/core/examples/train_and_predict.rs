//! Train every model kind on a feature table, save one to JSON and score
//! a participant with the reloaded copy.

use skyselect::features::extract_cohort;
use skyselect::models::{train, ModelKind, TrainedModel};
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::Cohort;

fn main() -> skyselect::Result<()> {
    let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::new(23, 23, 5) };
    let participants = generate_records(&spec)?.into_iter().map(|(r, _)| r).collect();
    let m = extract_cohort(&Cohort { participants })?;
    let m = m.impute(&m.column_means());

    // Hold out the first participant.
    let (train_rows, probe) = (m.without_row(0), m.row(0).to_vec());
    for kind in ModelKind::ALL {
        let model = train(kind, &train_rows)?;
        println!("{:<6} score {:>8.4} -> {}", kind.label(), model.score(&probe)?, model.predict(&probe)?);
    }

    let path = std::env::temp_dir().join("skyselect-example-model.json");
    train(ModelKind::Lr, &train_rows)?.save(&path)?;
    let back = TrainedModel::load(&path)?;
    println!("reloaded {} from {}: label {} (truth {})", back.kind(), path.display(), back.predict(&probe)?, m.labels()[0]);
    Ok(())
}
