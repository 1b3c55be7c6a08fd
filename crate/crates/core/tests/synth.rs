use std::collections::BTreeMap;
use std::path::Path;

use skyselect::features::flight::{detect_landing, extract_qar_features};
use skyselect::synth::{generate_cohort, generate_records, CohortSpec};

fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for sub in ["", "gaze", "flight"] {
        for e in std::fs::read_dir(dir.join(sub)).unwrap() {
            let p = e.unwrap().path();
            if p.is_file() {
                out.insert(p.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn small(seed: u64) -> CohortSpec {
    CohortSpec { gaze_hz: 20.0, ..CohortSpec::new(3, 2, seed) }
}

#[test]
fn cohort_files_do_not_depend_on_thread_count() {
    let write = |threads: usize| {
        let dir = tempfile::tempdir().unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| generate_cohort(&small(21), dir.path())).unwrap();
        read_tree(dir.path())
    };
    let one = write(1);
    assert_eq!(one.len(), 11);
    assert_eq!(one, write(4));
    let manifest = String::from_utf8(one["manifest.csv"].clone()).unwrap();
    assert!(manifest.contains("E001,1,gaze/E001.csv,flight/E001.csv"), "{manifest}");
    assert!(manifest.contains("N002,0,"), "{manifest}");
}

#[test]
fn different_seeds_give_different_cohorts() {
    let a = generate_records(&small(1)).unwrap();
    let b = generate_records(&small(2)).unwrap();
    assert_ne!(a[0].0.flight, b[0].0.flight);
    assert_ne!(a[0].0.gaze, b[0].0.gaze);
}

#[test]
fn extraction_recovers_the_scripted_events() {
    for (rec, truth) in generate_records(&small(5)).unwrap() {
        let dt = 1.0 / 30.0;
        let ev = detect_landing(&rec.flight).unwrap();
        let t = &truth.flight;
        assert!((ev.touchdown_time - t.touchdown_time).abs() <= dt, "{}: {} vs {}", rec.participant_id, ev.touchdown_time, t.touchdown_time);
        assert!((ev.full_stop_time - t.stop_time).abs() <= dt);
        let q = extract_qar_features(&rec.flight).unwrap();
        assert!((q.total_flight_time - t.targets.flight_time).abs() <= 2.0 * dt);
        assert!((q.dist_err_mean - t.targets.path_error_mean).abs() <= 1e-3 * t.targets.path_error_mean.max(1.0));
        // Gaze covers the whole flight log.
        let (g, f) = (rec.gaze.last().unwrap().timestamp, rec.flight.last().unwrap().timestamp);
        assert!((g - f).abs() <= 1.0 / 20.0);
    }
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(generate_records(&CohortSpec::new(0, 3, 1)).is_err());
    assert!(generate_records(&CohortSpec { gaze_hz: 0.0, ..CohortSpec::new(1, 1, 1) }).is_err());
    assert!(generate_records(&CohortSpec { flight_hz: f64::NAN, ..CohortSpec::new(1, 1, 1) }).is_err());
}
