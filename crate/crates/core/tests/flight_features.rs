use proptest::prelude::*;

use skyselect::features::flight::{
    centerline_errors, detect_landing, detect_takeoff, extract_qar_features, sample_at, FlightField, LandingParams,
    QarFeatures,
};
use skyselect::geo::LocalFrame;
use skyselect::synth::{default_profiles, generate_flight, FlightTargets, FLIGHT_DRAWS};
use skyselect::{seed, FlightSample};

fn flight(u: &[f64], expert: bool, s: u64) -> Vec<FlightSample> {
    let (e, n) = default_profiles();
    let profile = if expert { e.flight } else { n.flight };
    let targets = FlightTargets::draw(&profile, u);
    generate_flight(&targets, 10.0, &mut seed::rng(s)).0
}

fn draws() -> impl Strategy<Value = (Vec<f64>, bool, u64)> {
    (prop::collection::vec(0.02f64..0.98, FLIGHT_DRAWS), any::<bool>(), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generated_flights_land_once_and_slide((u, expert, s) in draws()) {
        let stream = flight(&u, expert, s);
        let ev = detect_landing(&stream).unwrap();
        prop_assert!(ev.touchdown_index <= ev.stop_index);
        prop_assert!(!ev.stop_flagged);
        // Once down it stays down.
        prop_assert!(stream[ev.touchdown_index..].iter().all(|x| x.agl <= 0.5));
        let q = extract_qar_features(&stream).unwrap();
        prop_assert!(q.slide_length > 0.0);
        prop_assert!(q.total_flight_time > 0.0);
    }

    #[test]
    fn extremes_bound_every_sample_in_the_window((u, expert, s) in draws(), frac in 0.0f64..=1.0) {
        let stream = flight(&u, expert, s);
        let q = extract_qar_features(&stream).unwrap();
        let ev = detect_landing(&stream).unwrap();
        let to = detect_takeoff(&stream, LandingParams::default()).unwrap();
        let (t0, t1) = (stream[to].timestamp, ev.touchdown_time);
        let t = t0 + frac * (t1 - t0);
        for (field, lo, hi) in [
            (FlightField::Aoa, q.aoa_min, q.aoa_max),
            (FlightField::Roll, q.roll_min, q.roll_max),
            (FlightField::Pitch, q.pitch_min, q.pitch_max),
        ] {
            let v = sample_at(&stream, t, field).unwrap();
            prop_assert!(lo <= v && v <= hi, "{field:?} {v} outside [{lo}, {hi}]");
        }
        prop_assert!(q.aoa_min <= q.aoa_1s && q.aoa_1s <= q.aoa_max);
        prop_assert!(q.pitch_min <= q.pitch_1s && q.pitch_1s <= q.pitch_max);
    }

    #[test]
    fn distance_error_dominates_its_components((u, expert, s) in draws()) {
        let stream = flight(&u, expert, s);
        let frame = LocalFrame::new(stream[0].longitude, stream[0].latitude);
        for e in centerline_errors(&stream, &frame, 0..=stream.len() - 1) {
            prop_assert!(e[3] >= e[0].abs().max(e[1].abs()).max(e[2].abs()));
        }
        prop_assert!(extract_qar_features(&stream).unwrap().dist_err_mean >= 0.0);
    }

    #[test]
    fn time_shift_moves_only_the_landing_time((u, expert, s) in draws(), shift in 1.0f64..5000.0) {
        let stream = flight(&u, expert, s);
        let shifted: Vec<_> = stream.iter().map(|x| FlightSample { timestamp: x.timestamp + shift, ..x.clone() }).collect();
        let (a, b) = (extract_qar_features(&stream).unwrap().values(), extract_qar_features(&shifted).unwrap().values());
        for (k, name) in QarFeatures::NAMES.iter().enumerate() {
            let want = if *name == "ldg_time" { a[k] + shift } else { a[k] };
            let tol = 1e-6 * (1.0 + want.abs());
            prop_assert!((b[k] - want).abs() <= tol || (want.is_nan() && b[k].is_nan()), "{name}: {} vs {want}", b[k]);
        }
    }
}

#[test]
fn slide_is_zero_exactly_when_stopped_at_touchdown() {
    let mut stream = flight(&[0.5; FLIGHT_DRAWS], true, 1);
    let ev = detect_landing(&stream).unwrap();
    assert!(stream[ev.touchdown_index].gs >= 1.0);
    assert!(extract_qar_features(&stream).unwrap().slide_length > 0.0);
    for x in &mut stream[ev.touchdown_index..] {
        x.gs = 0.5;
    }
    assert_eq!(extract_qar_features(&stream).unwrap().slide_length, 0.0);
}
