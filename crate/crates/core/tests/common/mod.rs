#![allow(dead_code)]

use std::sync::OnceLock;

use skyselect::features::extract_cohort;
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::telemetry::AoiName;
use skyselect::{Cohort, FeatureMatrix, GazeSample};

/// Gaze sample looking `yaw_deg` to the right of straight ahead.
pub fn gaze_at(t: f64, yaw_deg: f64, aoi: Option<AoiName>) -> GazeSample {
    let r = yaw_deg.to_radians();
    GazeSample {
        timestamp: t,
        gaze_origin_left: [-32.0, 0.0, 0.0],
        gaze_origin_right: [32.0, 0.0, 0.0],
        gaze_dir_left: [r.sin(), 0.0, r.cos()],
        gaze_dir_right: [r.sin(), 0.0, r.cos()],
        eye_open_left: 0.9,
        eye_open_right: 0.9,
        pupil_pos_left: [0.0, 0.0],
        pupil_pos_right: [0.0, 0.0],
        aoi,
    }
}

/// 6 + 6 participant cohort at a low gaze rate, generated once per test binary.
pub fn small_cohort() -> &'static Cohort {
    static COHORT: OnceLock<Cohort> = OnceLock::new();
    COHORT.get_or_init(|| {
        let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::new(6, 6, 11) };
        Cohort {
            participants: generate_records(&spec).unwrap().into_iter().map(|(r, _)| r).collect(),
        }
    })
}

pub fn small_matrix() -> &'static FeatureMatrix {
    static M: OnceLock<FeatureMatrix> = OnceLock::new();
    M.get_or_init(|| extract_cohort(small_cohort()).unwrap())
}
