//! Landing detection and flight-recorder features on one generated circuit.

use skyselect::features::flight::{detect_landing, extract_qar_features, QarFeatures};
use skyselect::synth::{default_profiles, generate_flight, FlightTargets, FLIGHT_DRAWS};
use skyselect::seed;

fn main() {
    let (expert, novice) = default_profiles();
    for (name, profile) in [("expert", expert), ("novice", novice)] {
        // Median draws: a typical participant of each class.
        let targets = FlightTargets::draw(&profile.flight, &[0.5; FLIGHT_DRAWS]);
        let (stream, truth) = generate_flight(&targets, 30.0, &mut seed::rng(1));
        let landing = detect_landing(&stream).unwrap();
        println!(
            "{name}: {} samples, touchdown {:.2} s (scripted {:.2}), stop {:.2} s",
            stream.len(),
            landing.touchdown_time,
            truth.touchdown_time,
            landing.full_stop_time
        );
        let q = extract_qar_features(&stream).unwrap();
        for (k, v) in QarFeatures::NAMES.iter().zip(q.values()) {
            if ["total_flight_time", "pitch_1s", "dist_err_mean", "dist_err_sd", "slide_length"].contains(k) {
                println!("  {k:<18} {v:>10.3}");
            }
        }
    }
}
