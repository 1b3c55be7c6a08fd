//! Per-class generator parameters and the distributions drawn from them.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::telemetry::{AoiName, Label};

/// Number of gaze states: the 19 AOIs plus "looking at none of them".
pub const GAZE_STATES: usize = 20;
/// Index of the off-AOI state.
pub const OFF_AOI: usize = 19;

/// Mean and SD of a per-participant quantity across a class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spread {
    pub mean: f64,
    pub sd: f64,
}

impl Spread {
    pub const fn new(mean: f64, sd: f64) -> Self {
        Spread { mean, sd }
    }

    pub const fn fixed(v: f64) -> Self {
        Spread { mean: v, sd: 0.0 }
    }

    /// Normal quantile.
    pub fn normal(&self, u: f64) -> f64 {
        self.mean + self.sd * std_normal_quantile(u)
    }

    /// Quantile of the lognormal with this mean and SD; 0 for a zero mean.
    pub fn lognormal(&self, u: f64) -> f64 {
        self.lognormal_z(std_normal_quantile(u))
    }

    /// Lognormal value at standard-normal score `z`.
    pub fn lognormal_z(&self, z: f64) -> f64 {
        if self.mean <= 0.0 {
            return 0.0;
        }
        let s2 = (1.0 + (self.sd / self.mean).powi(2)).ln();
        (self.mean.ln() - 0.5 * s2 + s2.sqrt() * z).exp()
    }

    /// Normal truncated below at `floor`, with the location shifted so the
    /// truncated mean equals `self.mean`.
    pub fn truncated_normal(&self, u: f64, floor: f64) -> f64 {
        if self.sd == 0.0 {
            return self.mean.max(floor);
        }
        let mu = truncated_location(self.mean, self.sd, floor);
        let n = Normal::new(0.0, 1.0).unwrap();
        let a = n.cdf((floor - mu) / self.sd);
        let p = (a + u * (1.0 - a)).clamp(1e-15, 1.0 - 1e-15);
        (mu + self.sd * n.inverse_cdf(p)).max(floor)
    }
}

pub fn std_normal_quantile(u: f64) -> f64 {
    Normal::new(0.0, 1.0).unwrap().inverse_cdf(u.clamp(1e-12, 1.0 - 1e-12))
}

/// Location `mu` of N(mu, sd) truncated at `floor` whose mean is `target`.
fn truncated_location(target: f64, sd: f64, floor: f64) -> f64 {
    let n = Normal::new(0.0, 1.0).unwrap();
    let mean_of = |mu: f64| {
        let a = (floor - mu) / sd;
        let tail = 1.0 - n.cdf(a);
        if tail < 1e-300 {
            return floor;
        }
        mu + sd * (-0.5 * a * a).exp() / (2.0 * std::f64::consts::PI).sqrt() / tail
    };
    let (mut lo, mut hi) = (target - 10.0 * sd, target);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean_of(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Gaze behaviour of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct GazeProfile {
    /// Dwell fractions of the airspeed, attitude, vertical speed and
    /// altitude indicators, each drawn per participant from a lognormal.
    pub key_dwell: [(AoiName, Spread); 4],
    /// Relative weights of the other 15 AOIs and the off-AOI state, sharing
    /// whatever the key instruments leave.
    pub other_weights: [f64; 16],
    /// Gamma shape multiplier for the other-state shares; larger is tighter.
    pub other_concentration: f64,
    /// Mean visit duration per state, seconds.
    pub visit_duration: [f64; GAZE_STATES],
    /// Per-participant multiplier on all visit durations.
    pub visit_scale: Spread,
    /// Mean fixation duration within a visit, seconds.
    pub fixation_duration: Spread,
    /// White angular noise on every sample, degrees.
    pub jitter_deg: Spread,
    pub eye_opening: Spread,
}

/// Flight behaviour of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightProfile {
    /// Takeoff-to-landing time, seconds; truncated below at `min_flight_time`.
    pub flight_time: Spread,
    pub min_flight_time: f64,
    /// Pitch held through the last seconds before touchdown, degrees.
    pub landing_pitch: Spread,
    /// Mean distance to the reference path over the flight, meters.
    pub path_error_mean: Spread,
    /// SD of that distance over the flight, meters.
    pub path_error_sd: Spread,
    /// Correlation of the two (log scale).
    pub path_error_correlation: f64,
    /// Share of the path error that is vertical, radians of elevation.
    pub vertical_angle: (f64, f64),
    /// Final-approach descent gradient (height per meter).
    pub glide_gradient: Spread,
    /// Speed at touchdown, m/s.
    pub touchdown_speed: Spread,
    /// Rollout deceleration, m/s^2.
    pub rollout_decel: Spread,
    /// RMS of attitude noise, degrees.
    pub roll_noise: Spread,
    pub pitch_noise: Spread,
    pub aoa_base: Spread,
    pub aoa_noise: Spread,
    /// RMS of control-input noise.
    pub input_noise: Spread,
    /// Elevator and rudder offsets held over the last 10 s of the approach.
    pub elevator_flare: Spread,
    pub rudder_flare: Spread,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassProfile {
    pub label: Label,
    pub flight: FlightProfile,
    pub gaze: GazeProfile,
}

impl ClassProfile {
    /// Class-average dwell fractions of the 20 gaze states.
    pub fn mean_dwell(&self) -> [f64; GAZE_STATES] {
        let mut out = [0.0; GAZE_STATES];
        let mut key_total = 0.0;
        for (aoi, s) in &self.gaze.key_dwell {
            out[aoi.index().unwrap()] = s.mean;
            key_total += s.mean;
        }
        let w_total: f64 = self.gaze.other_weights.iter().sum();
        for (slot, w) in other_states(&self.gaze).into_iter().zip(self.gaze.other_weights) {
            out[slot] = (1.0 - key_total) * w / w_total;
        }
        out
    }

    /// Class-average state transition matrix (row = from, column = to).
    /// Rows sum to 1 and the diagonal is zero: a visit ends by moving to a
    /// different state.
    pub fn transition_matrix(&self) -> [[f64; GAZE_STATES]; GAZE_STATES] {
        let q = jump_weights(&self.mean_dwell(), &self.gaze.visit_duration);
        jump_matrix(&q)
    }

    /// Same profile with every path error set to zero.
    pub fn without_path_error(mut self) -> Self {
        self.flight.path_error_mean = Spread::fixed(0.0);
        self.flight.path_error_sd = Spread::fixed(0.0);
        self
    }
}

/// Gaze-state slots not covered by `key_dwell`, in ascending order.
pub(crate) fn other_states(g: &GazeProfile) -> Vec<usize> {
    let keys: Vec<usize> = g.key_dwell.iter().map(|(a, _)| a.index().unwrap()).collect();
    (0..GAZE_STATES).filter(|s| !keys.contains(s)).collect()
}

/// Transition matrix of the independent-jump chain: from `i`, go to
/// `j != i` with probability `q_j / (1 - q_i)`.
pub fn jump_matrix(q: &[f64; GAZE_STATES]) -> [[f64; GAZE_STATES]; GAZE_STATES] {
    let mut m = [[0.0; GAZE_STATES]; GAZE_STATES];
    for i in 0..GAZE_STATES {
        for j in 0..GAZE_STATES {
            if i != j {
                m[i][j] = q[j] / (1.0 - q[i]);
            }
        }
    }
    m
}

/// Jump weights `q` such that the chain spends fraction `dwell[i]` of the
/// time in state `i` when visits to `i` last `visit[i]` on average.
///
/// The embedded chain visits state `i` in proportion to `q_i (1 - q_i)`,
/// so the weights solve `q_i (1 - q_i) = k dwell_i / visit_i` with
/// `sum q = 1`. A state cannot take more than every other visit; a target
/// asking for that is capped by lengthening its visits.
pub fn jump_weights(dwell: &[f64; GAZE_STATES], visit: &[f64; GAZE_STATES]) -> [f64; GAZE_STATES] {
    let mut a: Vec<f64> = dwell.iter().zip(visit).map(|(d, v)| (d / v).max(1e-12)).collect();
    let (imax, _) = a
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    let rest: f64 = a.iter().enumerate().filter(|(i, _)| *i != imax).map(|(_, v)| v).sum();
    if a[imax] >= rest {
        a[imax] = 0.999 * rest;
    }
    let amax = a[imax];
    let k_max = 0.25 / amax;
    let lower = |k: f64, v: f64| 0.5 * (1.0 - (1.0 - 4.0 * k * v).max(0.0).sqrt());
    let upper = |k: f64, v: f64| 0.5 * (1.0 + (1.0 - 4.0 * k * v).max(0.0).sqrt());
    let sum_lower = |k: f64| a.iter().map(|&v| lower(k, v)).sum::<f64>();
    let mut q = [0.0; GAZE_STATES];
    if sum_lower(k_max) >= 1.0 {
        // All weights below one half; the sum grows with k.
        let (mut lo, mut hi) = (0.0, k_max);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if sum_lower(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let k = 0.5 * (lo + hi);
        for (qi, &v) in q.iter_mut().zip(&a) {
            *qi = lower(k, v);
        }
    } else {
        // The dominant state takes the upper root.
        let f = |k: f64| {
            a.iter()
                .enumerate()
                .map(|(i, &v)| if i == imax { upper(k, v) } else { lower(k, v) })
                .sum::<f64>()
        };
        let (mut lo, mut hi) = (1e-12 * k_max, k_max);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let k = 0.5 * (lo + hi);
        for (i, (qi, &v)) in q.iter_mut().zip(&a).enumerate() {
            *qi = if i == imax { upper(k, v) } else { lower(k, v) };
        }
    }
    let s: f64 = q.iter().sum();
    q.iter_mut().for_each(|v| *v /= s);
    q
}

fn visit_durations(instrument: f64, glass: f64, off: f64) -> [f64; GAZE_STATES] {
    let mut v = [instrument; GAZE_STATES];
    for aoi in [AoiName::LeftCockpitGlass, AoiName::FrontCockpitGlass, AoiName::RightCockpitGlass] {
        v[aoi.index().unwrap()] = glass;
    }
    v[AoiName::AttitudeIndicator.index().unwrap()] = instrument * 1.6;
    v[OFF_AOI] = off;
    v
}

/// Weights for the 15 non-key AOIs (registry order) and the off-AOI state.
const OTHER_WEIGHTS: [f64; 16] = [
    0.6, // aircraft clocks
    0.8, // radio compass
    0.5, // inlet pressure gauge
    1.2, // turn-and-slip indicator
    0.5, // tri-use meter
    0.4, // course correction calculator
    1.4, // tachometer
    0.4, // cylinder head thermometer
    0.3, // air inlet temperature
    0.3, // current and voltage
    0.3, // tank pressure
    0.6, // spare compass
    3.0, // left glass
    8.0, // front glass
    3.0, // right glass
    4.0, // off-AOI
];

/// Expert and novice profiles matched to published group statistics of a
/// simulated traffic-pattern task.
pub fn default_profiles() -> (ClassProfile, ClassProfile) {
    let expert = ClassProfile {
        label: Label::Expert,
        flight: FlightProfile {
            flight_time: Spread::new(759.06, 163.58),
            min_flight_time: 250.0,
            landing_pitch: Spread::new(3.97, 24.43),
            path_error_mean: Spread::new(176.67, 205.52),
            path_error_sd: Spread::new(211.52, 225.76),
            path_error_correlation: 0.8,
            vertical_angle: (0.05, 0.2),
            glide_gradient: Spread::new(0.0524, 0.006),
            touchdown_speed: Spread::new(31.0, 2.0),
            rollout_decel: Spread::new(2.1, 0.35),
            roll_noise: Spread::new(2.5, 0.8),
            pitch_noise: Spread::new(1.2, 0.4),
            aoa_base: Spread::new(4.0, 0.8),
            aoa_noise: Spread::new(1.0, 0.3),
            input_noise: Spread::new(0.06, 0.02),
            elevator_flare: Spread::new(0.12, 0.08),
            rudder_flare: Spread::new(0.0, 0.04),
        },
        gaze: GazeProfile {
            key_dwell: [
                (AoiName::AirspeedIndicator, Spread::new(0.0856, 0.0545)),
                (AoiName::AttitudeIndicator, Spread::new(0.2515, 0.0923)),
                (AoiName::VerticalSpeedIndicator, Spread::new(0.1311, 0.0884)),
                (AoiName::AltitudeIndicator, Spread::new(0.0283, 0.0229)),
            ],
            other_weights: OTHER_WEIGHTS,
            other_concentration: 6.0,
            visit_duration: visit_durations(0.6, 1.2, 0.75),
            visit_scale: Spread::new(1.0, 0.12),
            fixation_duration: Spread::new(0.28, 0.05),
            jitter_deg: Spread::new(0.025, 0.008),
            eye_opening: Spread::new(0.84, 0.05),
        },
    };
    let novice = ClassProfile {
        label: Label::Novice,
        flight: FlightProfile {
            flight_time: Spread::new(902.32, 336.73),
            min_flight_time: 250.0,
            landing_pitch: Spread::new(-12.54, 29.03),
            path_error_mean: Spread::new(873.89, 818.43),
            path_error_sd: Spread::new(675.78, 589.07),
            path_error_correlation: 0.8,
            vertical_angle: (0.05, 0.2),
            glide_gradient: Spread::new(0.07, 0.018),
            touchdown_speed: Spread::new(34.0, 3.5),
            rollout_decel: Spread::new(1.6, 0.45),
            roll_noise: Spread::new(4.0, 1.5),
            pitch_noise: Spread::new(2.2, 0.8),
            aoa_base: Spread::new(5.5, 1.6),
            aoa_noise: Spread::new(1.6, 0.6),
            input_noise: Spread::new(0.11, 0.04),
            elevator_flare: Spread::new(-0.05, 0.2),
            rudder_flare: Spread::new(0.0, 0.15),
        },
        gaze: GazeProfile {
            key_dwell: [
                (AoiName::AirspeedIndicator, Spread::new(0.0532, 0.0498)),
                (AoiName::AttitudeIndicator, Spread::new(0.3103, 0.122)),
                (AoiName::VerticalSpeedIndicator, Spread::new(0.0533, 0.0411)),
                (AoiName::AltitudeIndicator, Spread::new(0.0134, 0.0222)),
            ],
            other_weights: OTHER_WEIGHTS,
            other_concentration: 6.0,
            visit_duration: visit_durations(0.7, 1.4, 0.85),
            visit_scale: Spread::new(1.0, 0.15),
            fixation_duration: Spread::new(0.33, 0.06),
            jitter_deg: Spread::new(0.035, 0.01),
            eye_opening: Spread::new(0.80, 0.06),
        },
    };
    (expert, novice)
}
