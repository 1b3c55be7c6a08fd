mod common;

use proptest::prelude::*;

use skyselect::synth::{generate_cohort, generate_records, CohortSpec};
use skyselect::telemetry::{
    load_cohort, parse_aoi_cell, parse_flight_log, parse_gaze_log, write_flight_log, write_gaze_log, AoiName,
};
use skyselect::{FlightSample, GazeSample};

fn aoi_strategy() -> impl Strategy<Value = Option<AoiName>> {
    prop_oneof![Just(None), (0..AoiName::COUNT).prop_map(|i| Some(AoiName::NAMED[i]))]
}

fn gaze_strategy() -> impl Strategy<Value = Vec<GazeSample>> {
    let unit = -1.0f64..=1.0;
    let row = (
        prop::array::uniform3(-50.0f64..50.0),
        prop::array::uniform3(unit.clone()),
        prop::array::uniform3(unit.clone()),
        (0.0f64..=1.0, 0.0f64..=1.0),
        prop::array::uniform4(unit),
        aoi_strategy(),
        1e-4f64..0.1,
    );
    prop::collection::vec(row, 1..40).prop_map(|rows| {
        let mut t = 0.0;
        rows.into_iter()
            .map(|(origin, dl, dr, (el, er), pupils, aoi, dt)| {
                t += dt;
                GazeSample {
                    timestamp: t,
                    gaze_origin_left: origin,
                    gaze_origin_right: origin.map(|v| -v),
                    gaze_dir_left: dl,
                    gaze_dir_right: dr,
                    eye_open_left: el,
                    eye_open_right: er,
                    pupil_pos_left: [pupils[0], pupils[1]],
                    pupil_pos_right: [pupils[2], pupils[3]],
                    aoi,
                }
            })
            .collect()
    })
}

fn flight_strategy() -> impl Strategy<Value = Vec<FlightSample>> {
    let row = (
        (-180.0f64..=180.0, -90.0f64..=90.0, 0.0f64..360.0),
        (120.0f64..122.0, 30.0f64..32.0, -0.5f64..2000.0),
        prop::array::uniform4(-100.0f64..100.0),
        prop::array::uniform3(-1.0f64..=1.0),
        prop::array::uniform3(0.0f64..200.0),
        1e-3f64..1.0,
    );
    prop::collection::vec(row, 1..40).prop_map(|rows| {
        let mut t = 0.0;
        rows.into_iter()
            .map(|((roll, pitch, yaw), (lon, lat, agl), m, inputs, r, dt)| {
                t += dt;
                FlightSample {
                    timestamp: t,
                    roll,
                    pitch,
                    yaw,
                    longitude: lon,
                    latitude: lat,
                    agl,
                    asl: agl + 5.0,
                    tas: m[0].abs(),
                    gs: m[1].abs(),
                    vertical_speed: m[2],
                    aoa: m[3] / 10.0,
                    rudder_input: inputs[0],
                    elevator_input: inputs[1],
                    roll_input: inputs[2],
                    nearest_ref: [lon + r[0] * 1e-5, lat + r[1] * 1e-5, r[2]],
                }
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn gaze_round_trip_is_exact(stream in gaze_strategy()) {
        let mut buf = Vec::new();
        write_gaze_log(&stream, &mut buf).unwrap();
        let back = parse_gaze_log(buf.as_slice()).unwrap();
        prop_assert_eq!(back, stream);
    }

    #[test]
    fn flight_round_trip_is_exact(stream in flight_strategy()) {
        let mut buf = Vec::new();
        write_flight_log(&stream, &mut buf).unwrap();
        let back = parse_flight_log(buf.as_slice()).unwrap();
        prop_assert_eq!(back, stream);
    }

    // Arbitrary bytes under a valid header either parse or fail with an
    // error; they never panic.
    #[test]
    fn parsers_are_total(body in prop::collection::vec(any::<u8>(), 0..400)) {
        let mut g = skyselect::telemetry::GAZE_COLUMNS.join(",").into_bytes();
        g.push(b'\n');
        g.extend_from_slice(&body);
        let _ = parse_gaze_log(g.as_slice()).map_err(|e| e.to_string());
        let mut f = skyselect::telemetry::FLIGHT_COLUMNS.join(",").into_bytes();
        f.push(b'\n');
        f.extend_from_slice(&body);
        let _ = parse_flight_log(f.as_slice()).map_err(|e| e.to_string());
        let _ = parse_gaze_log(body.as_slice());
    }

    #[test]
    fn random_strings_never_alias_an_aoi(s in "[a-zA-Z_ ]{0,30}") {
        if let Some(aoi) = parse_aoi_cell(&s).filter(|a| *a != AoiName::Unknown) {
            prop_assert_eq!(parse_aoi_cell(aoi.label()), Some(aoi));
            let squash = |x: &str| x.to_ascii_lowercase().replace([' ', '_'], "");
            prop_assert_eq!(squash(&s), squash(aoi.label()));
        }
    }
}

#[test]
fn gaze_parse_reports_the_bad_row() {
    let stream = vec![common::gaze_at(0.0, 0.0, None), common::gaze_at(0.1, 1.0, None)];
    let mut buf = Vec::new();
    write_gaze_log(&stream, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap().replacen("0.1,", "abc,", 1);
    let err = parse_gaze_log(text.as_bytes()).unwrap_err().to_string();
    assert!(err.contains("row 2"), "{err}");
}

#[test]
fn written_cohort_loads_back_identically() {
    let spec = CohortSpec { gaze_hz: 20.0, ..CohortSpec::new(2, 2, 3) };
    let dir = tempfile::tempdir().unwrap();
    let manifest = generate_cohort(&spec, dir.path()).unwrap();
    let loaded = load_cohort(&manifest).unwrap();
    let memory: Vec<_> = generate_records(&spec).unwrap().into_iter().map(|(r, _)| r).collect();
    assert_eq!(loaded.participants, memory);
    assert_eq!(loaded.class_counts(), (2, 2));
}

#[test]
fn manifest_problems_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("manifest.csv");
    std::fs::write(&m, "participant_id,label,gaze_path,flight_path\nP1,1,g.csv,f.csv\n").unwrap();
    let err = load_cohort(&m).unwrap_err().to_string();
    assert!(err.contains("g.csv"), "{err}");
    std::fs::write(&m, "participant_id,label,gaze_path,flight_path\nP1,2,g.csv,f.csv\n").unwrap();
    let err = load_cohort(&m).unwrap_err().to_string();
    assert!(err.contains('2'), "{err}");
    std::fs::write(&m, "participant_id,label,gaze_path,flight_path\nP1,1,g,f\nP1,0,g,f\n").unwrap();
    let err = load_cohort(&m).unwrap_err().to_string();
    assert!(err.contains("P1"), "{err}");
}
