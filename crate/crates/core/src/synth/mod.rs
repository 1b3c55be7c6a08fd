//! Synthetic cohorts: labeled participants with raw gaze and flight logs.
//!
//! Class profiles set the population each participant is drawn from. Within a
//! cohort the participant-level quantities (flight time, path error, dwell
//! shares and so on) are drawn by stratified sampling per class, so small
//! cohorts still cover each distribution evenly. Every participant then gets
//! its own random stream derived from the cohort seed and its id, which makes
//! parallel and serial generation identical.

pub mod flight;
pub mod gaze;
pub mod profile;

use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::seed;
use crate::telemetry::{write_flight_log, write_gaze_log, write_manifest, Label, ManifestRow, ParticipantRecord};
use crate::{Error, Result};

pub use flight::{generate_flight, FlightTargets, FlightTruth, FLIGHT_DRAWS};
pub use gaze::{generate_gaze, GazeTargets, GAZE_DRAWS};
pub use profile::{default_profiles, ClassProfile, FlightProfile, GazeProfile, Spread, GAZE_STATES, OFF_AOI};

/// Uniforms consumed per participant.
pub const DRAWS: usize = FLIGHT_DRAWS + GAZE_DRAWS;

#[derive(Debug, Clone, PartialEq)]
pub struct CohortSpec {
    pub n_expert: usize,
    pub n_novice: usize,
    pub seed: u64,
    pub gaze_hz: f64,
    pub flight_hz: f64,
    pub expert: ClassProfile,
    pub novice: ClassProfile,
}

impl CohortSpec {
    /// Default rates and profiles.
    pub fn new(n_expert: usize, n_novice: usize, seed: u64) -> Self {
        let (expert, novice) = default_profiles();
        CohortSpec {
            n_expert,
            n_novice,
            seed,
            gaze_hz: 120.0,
            flight_hz: 30.0,
            expert,
            novice,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_expert == 0 || self.n_novice == 0 {
            return Err(Error::Config("a cohort needs at least one participant per class".into()));
        }
        if !(self.gaze_hz > 0.0 && self.flight_hz > 0.0 && self.gaze_hz.is_finite() && self.flight_hz.is_finite()) {
            return Err(Error::Config("sample rates must be positive".into()));
        }
        Ok(())
    }

    /// Participant ids and labels in manifest order: experts E001.., then
    /// novices N001...
    pub fn roster(&self) -> Vec<(String, Label)> {
        let experts = (1..=self.n_expert).map(|i| (format!("E{i:03}"), Label::Expert));
        let novices = (1..=self.n_novice).map(|i| (format!("N{i:03}"), Label::Novice));
        experts.chain(novices).collect()
    }

    fn profile(&self, label: Label) -> &ClassProfile {
        match label {
            Label::Expert => &self.expert,
            Label::Novice => &self.novice,
        }
    }
}

impl Default for CohortSpec {
    fn default() -> Self {
        CohortSpec::new(23, 23, 7)
    }
}

/// What the generator intended for one participant.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticipantTruth {
    pub flight: FlightTruth,
    pub gaze: GazeTargets,
}

/// Stratified uniforms for `n` participants: each of the `DRAWS` columns
/// puts exactly one value in each of the `n` equal strata of (0, 1).
pub fn stratified_draws(n: usize, seed: u64) -> Vec<[f64; DRAWS]> {
    let mut rng = seed::rng(seed);
    let mut out = vec![[0.0; DRAWS]; n];
    for d in 0..DRAWS {
        let mut strata: Vec<usize> = (0..n).collect();
        strata.shuffle(&mut rng);
        for (row, s) in out.iter_mut().zip(strata) {
            row[d] = (s as f64 + rng.random::<f64>()) / n as f64;
        }
    }
    out
}

/// Generate one participant from explicit participant-level uniforms.
pub fn generate_participant_from(
    profile: &ClassProfile,
    id: &str,
    draws: &[f64; DRAWS],
    seed: u64,
    gaze_hz: f64,
    flight_hz: f64,
) -> (ParticipantRecord, ParticipantTruth) {
    let targets = FlightTargets::draw(&profile.flight, &draws[..FLIGHT_DRAWS]);
    let mut flight_rng = seed::rng(seed::derive(seed, "flight"));
    let (flight_log, flight_truth) = generate_flight(&targets, flight_hz, &mut flight_rng);
    let mut gaze_rng = seed::rng(seed::derive(seed, "gaze"));
    let gaze_targets = GazeTargets::draw(&profile.gaze, &draws[FLIGHT_DRAWS..], &mut gaze_rng);
    let duration = flight_log.last().map_or(0.0, |s| s.timestamp);
    let gaze_log = generate_gaze(&gaze_targets, duration, gaze_hz, &mut gaze_rng);
    let record = ParticipantRecord::new(id, profile.label, gaze_log, flight_log).expect("generated streams are non-empty");
    (record, ParticipantTruth { flight: flight_truth, gaze: gaze_targets })
}

/// Generate one participant with independent draws, at the default rates.
pub fn generate_participant(profile: &ClassProfile, label: Label, seed: u64) -> ParticipantRecord {
    let mut rng = seed::rng(seed::derive(seed, "draws"));
    let mut draws = [0.0; DRAWS];
    for d in draws.iter_mut() {
        *d = rng.random::<f64>().clamp(1e-12, 1.0 - 1e-12);
    }
    let id = match label {
        Label::Expert => "E001",
        Label::Novice => "N001",
    };
    let mut profile = profile.clone();
    profile.label = label;
    generate_participant_from(&profile, id, &draws, seed, 120.0, 30.0).0
}

/// Per-participant seed and draws of a cohort, in roster order.
fn cohort_plan(spec: &CohortSpec) -> Vec<(String, Label, u64, [f64; DRAWS])> {
    let root = seed::derive(spec.seed, "synth");
    let mut expert_draws = stratified_draws(spec.n_expert, seed::derive(root, "strata.expert")).into_iter();
    let mut novice_draws = stratified_draws(spec.n_novice, seed::derive(root, "strata.novice")).into_iter();
    spec.roster()
        .into_iter()
        .map(|(id, label)| {
            let draws = match label {
                Label::Expert => expert_draws.next(),
                Label::Novice => novice_draws.next(),
            }
            .unwrap();
            let s = seed::derive(root, &id);
            (id, label, s, draws)
        })
        .collect()
}

/// Generate a cohort in memory.
pub fn generate_records(spec: &CohortSpec) -> Result<Vec<(ParticipantRecord, ParticipantTruth)>> {
    spec.validate()?;
    Ok(cohort_plan(spec)
        .into_par_iter()
        .map(|(id, label, s, draws)| {
            generate_participant_from(spec.profile(label), &id, &draws, s, spec.gaze_hz, spec.flight_hz)
        })
        .collect())
}

/// Write a cohort under `out`: `gaze/<id>.csv`, `flight/<id>.csv` and
/// `manifest.csv` with paths relative to `out`. Returns the manifest path.
pub fn generate_cohort(spec: &CohortSpec, out: &Path) -> Result<PathBuf> {
    spec.validate()?;
    for sub in ["gaze", "flight"] {
        let dir = out.join(sub);
        std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    }
    let rows = cohort_plan(spec)
        .into_par_iter()
        .map(|(id, label, s, draws)| -> Result<ManifestRow> {
            let (rec, _) = generate_participant_from(spec.profile(label), &id, &draws, s, spec.gaze_hz, spec.flight_hz);
            let gaze_path = PathBuf::from("gaze").join(format!("{id}.csv"));
            let flight_path = PathBuf::from("flight").join(format!("{id}.csv"));
            write_file(&out.join(&gaze_path), |f| write_gaze_log(&rec.gaze, f))?;
            write_file(&out.join(&flight_path), |f| write_flight_log(&rec.flight, f))?;
            Ok(ManifestRow { participant_id: id, label, gaze_path, flight_path })
        })
        .collect::<Result<Vec<_>>>()?;
    let manifest = out.join("manifest.csv");
    write_file(&manifest, |f| write_manifest(&rows, f))?;
    log::info!("wrote {} participants to {}", rows.len(), out.display());
    Ok(manifest)
}

fn write_file(path: &Path, write: impl FnOnce(std::fs::File) -> std::io::Result<()>) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write(f).map_err(|e| Error::io(path, e))
}
