//! Gaze logs from a jump chain over cockpit areas.
//!
//! Each visit to an area lasts a gamma-distributed time and holds one or
//! more fixations near that area's anchor direction. Fixations inside a visit
//! are separated by small saccades so the velocity-threshold detector sees
//! them as distinct.

use rand::Rng;
use rand_distr::{Distribution, Gamma, Normal};

use crate::numfmt::round_to;
use crate::telemetry::{AoiName, GazeSample};

use super::profile::{jump_matrix, jump_weights, other_states, GazeProfile, GAZE_STATES, OFF_AOI};

/// Number of uniforms consumed by [`GazeTargets::draw`].
pub const GAZE_DRAWS: usize = 8;

const VISIT_SHAPE: f64 = 2.0;
const MIN_VISIT_S: f64 = 0.1;
const FIXATION_SHAPE: f64 = 4.0;
const MIN_FIXATION_S: f64 = 0.08;
const MIN_REFIXATION_DEG: f64 = 1.0;
const EYE_OPENING_NOISE: f64 = 0.03;

/// Per-participant gaze parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GazeTargets {
    /// Time share of each gaze state; the last entry is the off-AOI state.
    pub dwell: [f64; GAZE_STATES],
    pub visit_duration: [f64; GAZE_STATES],
    pub fixation_duration: f64,
    pub jitter_deg: f64,
    pub eye_opening: f64,
}

impl GazeTargets {
    /// Map `GAZE_DRAWS` uniforms through the profile's marginals. The split
    /// of the remaining time over the other states uses `rng`.
    pub fn draw<R: Rng>(p: &GazeProfile, u: &[f64], rng: &mut R) -> Self {
        assert_eq!(u.len(), GAZE_DRAWS);
        let mut dwell = [0.0; GAZE_STATES];
        let mut key_total = 0.0;
        for (k, (aoi, s)) in p.key_dwell.iter().enumerate() {
            let v = s.lognormal(u[k]);
            dwell[aoi.index().unwrap()] = v;
            key_total += v;
        }
        // Keep some time for the windows and everything else.
        if key_total > 0.85 {
            for (aoi, _) in &p.key_dwell {
                dwell[aoi.index().unwrap()] *= 0.85 / key_total;
            }
            key_total = 0.85;
        }
        let shares: Vec<f64> = p
            .other_weights
            .iter()
            .map(|w| Gamma::new(p.other_concentration * w, 1.0).unwrap().sample(rng))
            .collect();
        let total: f64 = shares.iter().sum();
        for (slot, g) in other_states(p).into_iter().zip(shares) {
            dwell[slot] = (1.0 - key_total) * g / total;
        }
        let scale = p.visit_scale.normal(u[4]).max(0.3);
        GazeTargets {
            dwell,
            visit_duration: p.visit_duration.map(|v| v * scale),
            fixation_duration: p.fixation_duration.normal(u[5]).max(0.1),
            jitter_deg: p.jitter_deg.normal(u[6]).max(0.0),
            eye_opening: p.eye_opening.normal(u[7]).clamp(0.2, 1.0),
        }
    }
}

/// Where each state sits in the field of view: yaw, pitch and radius in
/// degrees. Instruments form a 4x4 panel below the horizon; the three
/// windows are wide areas ahead and to the sides.
fn anchor(state: usize) -> (f64, f64, f64) {
    match state {
        16 => (-55.0, 5.0, 12.0),
        17 => (0.0, 10.0, 12.0),
        18 => (55.0, 5.0, 12.0),
        OFF_AOI => (0.0, 0.0, 0.0),
        i => {
            let (col, row) = (i % 4, i / 4);
            (-24.0 + 16.0 * col as f64, -12.0 - 10.0 * row as f64, 3.0)
        }
    }
}

fn state_aoi(state: usize) -> Option<AoiName> {
    (state < AoiName::COUNT).then(|| AoiName::NAMED[state])
}

fn direction(yaw_deg: f64, pitch_deg: f64) -> [f64; 3] {
    let (y, p) = (yaw_deg.to_radians(), pitch_deg.to_radians());
    [p.cos() * y.sin(), p.sin(), p.cos() * y.cos()]
}

fn pick<R: Rng>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let mut x = rng.random::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if x < *w {
            return i;
        }
        x -= w;
    }
    weights.iter().rposition(|w| *w > 0.0).unwrap_or(0)
}

fn fixation_target<R: Rng>(state: usize, prev: Option<(f64, f64)>, rng: &mut R) -> (f64, f64) {
    let (ay, ap, r) = anchor(state);
    let draw = |rng: &mut R| {
        if state == OFF_AOI {
            return (rng.random_range(-80.0..80.0), rng.random_range(-60.0..50.0));
        }
        let rho = r * rng.random::<f64>().sqrt();
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        (ay + rho * theta.cos(), ap + rho * theta.sin())
    };
    let mut target = draw(rng);
    if let Some((py, pp)) = prev {
        for _ in 0..20 {
            if (target.0 - py).hypot(target.1 - pp) >= MIN_REFIXATION_DEG {
                break;
            }
            target = draw(rng);
        }
        let gap = (target.0 - py).hypot(target.1 - pp);
        if gap < MIN_REFIXATION_DEG {
            target.0 = py + MIN_REFIXATION_DEG.copysign(target.0 - py);
        }
    }
    target
}

/// Generate a gaze log covering `[0, duration]` at `hz`.
pub fn generate_gaze<R: Rng>(targets: &GazeTargets, duration: f64, hz: f64, rng: &mut R) -> Vec<GazeSample> {
    let q = jump_weights(&targets.dwell, &targets.visit_duration);
    let jumps = jump_matrix(&q);
    let jitter = Normal::new(0.0, targets.jitter_deg.max(1e-12)).unwrap();
    let openness = Normal::new(0.0, EYE_OPENING_NOISE).unwrap();
    let fixation = Gamma::new(FIXATION_SHAPE, targets.fixation_duration / FIXATION_SHAPE).unwrap();
    let visit_len = |state: usize, rng: &mut R| {
        let mean = targets.visit_duration[state];
        Gamma::new(VISIT_SHAPE, mean / VISIT_SHAPE).unwrap().sample(rng).max(MIN_VISIT_S)
    };
    let origin_shift: f64 = rng.random_range(-2.0..2.0);
    let origin_left = [round_to(-32.0 + origin_shift, 2), 0.0, 0.0];
    let origin_right = [round_to(32.0 + origin_shift, 2), 0.0, 0.0];

    let n = (duration * hz).floor() as usize + 1;
    let mut out = Vec::with_capacity(n);
    let mut state = pick(&targets.dwell, rng);
    let mut visit_end = visit_len(state, rng);
    let mut gaze_at = fixation_target(state, None, rng);
    let mut fixation_end = fixation.sample(rng).max(MIN_FIXATION_S);
    for k in 0..n {
        let t = k as f64 / hz;
        while t >= fixation_end.min(visit_end) {
            if t >= visit_end {
                state = pick(&jumps[state], rng);
                visit_end += visit_len(state, rng);
                gaze_at = fixation_target(state, None, rng);
                fixation_end = t + fixation.sample(rng).max(MIN_FIXATION_S);
            } else {
                gaze_at = fixation_target(state, Some(gaze_at), rng);
                fixation_end += fixation.sample(rng).max(MIN_FIXATION_S);
            }
        }
        let yaw = gaze_at.0 + jitter.sample(rng);
        let pitch = gaze_at.1 + jitter.sample(rng);
        let dir = direction(yaw, pitch).map(|v| round_to(v, 6));
        let open = |rng: &mut R| round_to((targets.eye_opening + openness.sample(rng)).clamp(0.0, 1.0), 3);
        let pupil = [round_to(0.4 * dir[0], 4), round_to(-0.4 * dir[1], 4)];
        out.push(GazeSample {
            timestamp: round_to(t, 6),
            gaze_origin_left: origin_left,
            gaze_origin_right: origin_right,
            gaze_dir_left: dir,
            gaze_dir_right: dir,
            eye_open_left: open(rng),
            eye_open_right: open(rng),
            pupil_pos_left: pupil,
            pupil_pos_right: pupil,
            aoi: state_aoi(state),
        });
    }
    out
}
