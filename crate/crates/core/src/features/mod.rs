//! Per-participant feature extraction into registry order.

pub mod eye;
pub mod flight;
pub mod registry;

use rayon::prelude::*;
use thiserror::Error;

pub use eye::{
    detect_fixations, extract_aoi_features, extract_em_features, AoiFeatures, EmFeatures,
    Fixation, FixationParams,
};
pub use flight::{
    detect_landing, extract_qar_features, performance_indicators, sample_at, FlightField,
    LandingEvent, LandingParams, PerformanceIndicators, QarFeatures,
};
pub use registry::{DatasetCombo, FeatureGroup, FeatureRegistry};

use crate::data::FeatureMatrix;
use crate::telemetry::{Cohort, ParticipantRecord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeatureError {
    #[error("stream is empty")]
    EmptyStream,
    #[error("stream spans zero time")]
    ZeroDuration,
    #[error("never airborne (AGL never exceeds the airborne threshold)")]
    NeverAirborne,
    #[error("no landing (no sustained ground contact after the airborne phase)")]
    NoLanding,
    #[error("time {t} outside stream span [{start}, {end}]")]
    OutsideSpan { t: f64, start: f64, end: f64 },
}

/// All registry columns for one participant. Before-landing samples that
/// fall outside the flight log are NaN.
pub fn extract_participant(record: &ParticipantRecord) -> Result<Vec<f64>, FeatureError> {
    let aoi = extract_aoi_features(&record.gaze)?;
    let em = extract_em_features(&record.gaze)?;
    let qar = extract_qar_features(&record.flight)?;
    let mut row = Vec::with_capacity(63);
    row.extend_from_slice(&aoi.percent_dwell);
    row.extend_from_slice(&[
        em.sd_fix_x,
        em.sd_fix_y,
        em.sd_fix_z,
        em.eye_opening_mean,
        em.aoi_transition_freq,
        em.fixation_duration_mean,
        em.fixation_count as f64,
    ]);
    row.extend_from_slice(&qar.values());
    Ok(row)
}

/// Feature table for a whole cohort, rows in cohort order. Fails on the
/// first participant (in cohort order) whose extraction fails.
pub fn extract_cohort(cohort: &Cohort) -> crate::Result<FeatureMatrix> {
    let registry = FeatureRegistry::standard();
    let rows: Vec<Result<Vec<f64>, FeatureError>> =
        cohort.participants.par_iter().map(extract_participant).collect();
    let mut out = Vec::with_capacity(rows.len());
    for (rec, row) in cohort.participants.iter().zip(rows) {
        out.push(row.map_err(|e| crate::Error::Participant {
            participant: rec.participant_id.clone(),
            source: Box::new(e.into()),
        })?);
    }
    FeatureMatrix::new(
        cohort.participants.iter().map(|p| p.participant_id.clone()).collect(),
        registry.names(),
        out,
        cohort.participants.iter().map(|p| p.label.as_u8()).collect(),
    )
}
