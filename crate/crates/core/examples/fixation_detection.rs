//! Velocity-threshold fixation detection and the eye-movement features on
//! a hand-built gaze trace.

use skyselect::features::eye::{detect_fixations, extract_aoi_features, extract_em_features, FixationParams};
use skyselect::telemetry::AoiName;
use skyselect::GazeSample;

fn sample(t: f64, yaw_deg: f64, aoi: AoiName) -> GazeSample {
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
        aoi: Some(aoi),
    }
}

fn main() {
    // 100 Hz: 300 ms on the airspeed indicator, a 5 degree jump to the
    // attitude indicator, 300 ms there, then a slow 10 deg/s drift.
    let mut trace = Vec::new();
    for k in 0..=30 {
        trace.push(sample(k as f64 / 100.0, 0.0, AoiName::AirspeedIndicator));
    }
    for k in 31..=61 {
        trace.push(sample(k as f64 / 100.0, 5.0, AoiName::AttitudeIndicator));
    }
    for k in 62..=161 {
        let t = k as f64 / 100.0;
        trace.push(sample(t, 5.0 + 10.0 * (t - 0.61), AoiName::AttitudeIndicator));
    }

    let scan = detect_fixations(&trace, FixationParams::default());
    for f in &scan.fixations {
        println!("fixation {:.2}-{:.2} s ({:.0} ms)", f.start, f.end, f.duration * 1000.0);
    }

    let em = extract_em_features(&trace).unwrap();
    println!("{em:#?}");
    let aoi = extract_aoi_features(&trace).unwrap();
    for name in [AoiName::AirspeedIndicator, AoiName::AttitudeIndicator] {
        println!("{name}: {:.1}% of gaze time", 100.0 * aoi.dwell(name));
    }
}
