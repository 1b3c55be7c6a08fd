//! Kinematic traffic-pattern flights.
//!
//! The aircraft idles, rolls, lifts off, flies a left-hand rectangular
//! circuit (upwind, crosswind, downwind, base, final), lands on the runway it
//! left and rolls out to a stop. The reference path is the noiseless circuit;
//! the flown path is pushed off it along the outward normal and upward by a
//! slowly varying distance whose mean and SD over the flight are drawn per
//! participant.

use std::f64::consts::PI;

use rand::Rng;

use crate::features::flight::{detect_landing, detect_takeoff, LandingParams};
use crate::geo::LocalFrame;
use crate::numfmt::round_to;
use crate::telemetry::FlightSample;

use super::profile::{std_normal_quantile, FlightProfile};

pub const ORIGIN_LON: f64 = 121.0;
pub const ORIGIN_LAT: f64 = 31.0;
pub const FIELD_ELEVATION: f64 = 5.0;

const IDLE_S: f64 = 5.0;
const ROLL_ACCEL: f64 = 2.5;
const LIFTOFF_SPEED: f64 = 30.0;
const CRUISE_SPEED: f64 = 45.0;
const ACCEL_DIST: f64 = 560.0;
const DECEL_DIST: f64 = 1500.0;
const CLIMB_GRADIENT: f64 = 0.08;
const PATTERN_HEIGHT: f64 = 300.0;
const PATTERN_WIDTH: f64 = 1200.0;
const TURN_RADIUS: f64 = 300.0;
const TOUCHDOWN_X: f64 = 250.0;
const STOP_HOLD_S: f64 = 5.0;
const CONTACT_AGL: f64 = 0.5;
/// Ramp-in and ramp-out of the path deviation after takeoff and before landing.
const DEVIATION_RAMP_S: f64 = 45.0;
const DEVIATION_LOG_SD: f64 = 1.0;
const G: f64 = 9.81;

fn liftoff_x() -> f64 {
    LIFTOFF_SPEED * LIFTOFF_SPEED / (2.0 * ROLL_ACCEL)
}

fn liftoff_time() -> f64 {
    IDLE_S + LIFTOFF_SPEED / ROLL_ACCEL
}

/// Number of uniforms consumed by [`FlightTargets::draw`].
pub const FLIGHT_DRAWS: usize = 16;

/// Per-participant flight parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightTargets {
    pub flight_time: f64,
    pub landing_pitch: f64,
    pub path_error_mean: f64,
    pub path_error_sd: f64,
    pub vertical_angle: f64,
    pub glide_gradient: f64,
    pub touchdown_speed: f64,
    pub rollout_decel: f64,
    pub roll_noise: f64,
    pub pitch_noise: f64,
    pub aoa_base: f64,
    pub aoa_noise: f64,
    pub input_noise: f64,
    pub elevator_flare: f64,
    pub rudder_flare: f64,
}

impl FlightTargets {
    /// Map `FLIGHT_DRAWS` uniforms in (0, 1) through the profile's marginals.
    pub fn draw(p: &FlightProfile, u: &[f64]) -> Self {
        assert_eq!(u.len(), FLIGHT_DRAWS);
        let z1 = std_normal_quantile(u[2]);
        let z2 = p.path_error_correlation * z1
            + (1.0 - p.path_error_correlation.powi(2)).sqrt() * std_normal_quantile(u[3]);
        let pos = |v: f64, floor: f64| v.max(floor);
        FlightTargets {
            flight_time: p.flight_time.truncated_normal(u[0], p.min_flight_time),
            landing_pitch: p.landing_pitch.normal(u[1]).clamp(-85.0, 85.0),
            path_error_mean: p.path_error_mean.lognormal_z(z1),
            path_error_sd: p.path_error_sd.lognormal_z(z2),
            vertical_angle: p.vertical_angle.0 + u[4] * (p.vertical_angle.1 - p.vertical_angle.0),
            glide_gradient: p.glide_gradient.normal(u[5]).clamp(0.03, 0.15),
            touchdown_speed: p.touchdown_speed.normal(u[6]).clamp(22.0, 44.0),
            rollout_decel: pos(p.rollout_decel.normal(u[7]), 0.5),
            roll_noise: pos(p.roll_noise.normal(u[8]), 0.0),
            pitch_noise: pos(p.pitch_noise.normal(u[9]), 0.0),
            aoa_base: pos(p.aoa_base.normal(u[10]), 0.5),
            aoa_noise: pos(p.aoa_noise.normal(u[11]), 0.0),
            input_noise: pos(p.input_noise.normal(u[12]), 0.0),
            elevator_flare: p.elevator_flare.normal(u[13]).clamp(-0.6, 0.6),
            rudder_flare: p.rudder_flare.normal(u[14]).clamp(-0.6, 0.6),
        }
    }
}

/// Scripted event times of a generated flight.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightTruth {
    /// Climb-out crossing of 0.5 m AGL.
    pub takeoff_time: f64,
    /// Descent crossing of 0.5 m AGL.
    pub touchdown_time: f64,
    /// Ground speed falls below 1 m/s.
    pub stop_time: f64,
    pub targets: FlightTargets,
}

/// Airborne speed schedule along the path, linear in distance per piece.
#[derive(Debug, Clone, Copy)]
struct SpeedSchedule {
    length: f64,
    touchdown_speed: f64,
}

impl SpeedSchedule {
    fn pieces(&self) -> [(f64, f64, f64, f64); 3] {
        let l = self.length;
        [
            (0.0, ACCEL_DIST, LIFTOFF_SPEED, CRUISE_SPEED),
            (ACCEL_DIST, l - DECEL_DIST, CRUISE_SPEED, CRUISE_SPEED),
            (l - DECEL_DIST, l, CRUISE_SPEED, self.touchdown_speed),
        ]
    }

    fn speed(&self, s: f64) -> f64 {
        for (s0, s1, v0, v1) in self.pieces() {
            if s <= s1 {
                return v0 + (v1 - v0) * (s - s0).max(0.0) / (s1 - s0);
            }
        }
        self.touchdown_speed
    }

    /// Seconds from liftoff to distance `s`.
    fn time_at(&self, s: f64) -> f64 {
        let mut t = 0.0;
        for (s0, s1, v0, v1) in self.pieces() {
            let end = s.min(s1);
            if end <= s0 {
                break;
            }
            let k = (v1 - v0) / (s1 - s0);
            t += if k.abs() < 1e-12 {
                (end - s0) / v0
            } else {
                ((v0 + k * (end - s0)) / v0).ln() / k
            };
        }
        t
    }

    /// Distance flown `tau` seconds after liftoff.
    fn distance_at(&self, tau: f64) -> f64 {
        let mut t0 = 0.0;
        for (s0, s1, v0, v1) in self.pieces() {
            let k = (v1 - v0) / (s1 - s0);
            let dt = if k.abs() < 1e-12 { (s1 - s0) / v0 } else { (v1 / v0).ln() / k };
            if tau <= t0 + dt {
                let x = tau - t0;
                return if k.abs() < 1e-12 {
                    s0 + v0 * x
                } else {
                    s0 + v0 * ((k * x).exp() - 1.0) / k
                };
            }
            t0 += dt;
        }
        self.length
    }
}

#[derive(Debug, Clone, Copy)]
enum Leg {
    Straight { x0: f64, y0: f64, heading: f64 },
    /// Left turn about `(cx, cy)` entered at `heading`.
    Turn { cx: f64, cy: f64, heading: f64 },
}

/// Left-hand circuit from the liftoff point to the touchdown point.
#[derive(Debug, Clone)]
struct Circuit {
    legs: Vec<(f64, f64, Leg)>,
    length: f64,
}

impl Circuit {
    /// Circuit whose far ends sit `half_span` meters east and west of the
    /// runway threshold.
    fn new(half_span: f64) -> Self {
        let (w, r, x) = (PATTERN_WIDTH, TURN_RADIUS, half_span);
        let quarter = 0.5 * PI * r;
        let plan = [
            (x - r - liftoff_x(), Leg::Straight { x0: liftoff_x(), y0: 0.0, heading: 0.0 }),
            (quarter, Leg::Turn { cx: x - r, cy: r, heading: 0.0 }),
            (w - 2.0 * r, Leg::Straight { x0: x, y0: r, heading: 0.5 * PI }),
            (quarter, Leg::Turn { cx: x - r, cy: w - r, heading: 0.5 * PI }),
            (2.0 * x - 2.0 * r, Leg::Straight { x0: x - r, y0: w, heading: PI }),
            (quarter, Leg::Turn { cx: -x + r, cy: w - r, heading: PI }),
            (w - 2.0 * r, Leg::Straight { x0: -x, y0: w - r, heading: 1.5 * PI }),
            (quarter, Leg::Turn { cx: -x + r, cy: r, heading: 1.5 * PI }),
            (TOUCHDOWN_X + x - r, Leg::Straight { x0: -x + r, y0: 0.0, heading: 0.0 }),
        ];
        let mut legs = Vec::with_capacity(plan.len());
        let mut start = 0.0;
        for (len, leg) in plan {
            legs.push((start, len, leg));
            start += len;
        }
        Circuit { legs, length: start }
    }

    /// Position, heading (radians counterclockwise from east) and signed
    /// curvature at distance `s` from liftoff.
    fn at(&self, s: f64) -> (f64, f64, f64, f64) {
        let (start, _, leg) = self
            .legs
            .iter()
            .rev()
            .find(|(start, _, _)| s >= *start)
            .unwrap_or(&self.legs[0]);
        let ds = s - start;
        match *leg {
            Leg::Straight { x0, y0, heading } => {
                (x0 + ds * heading.cos(), y0 + ds * heading.sin(), heading, 0.0)
            }
            Leg::Turn { cx, cy, heading } => {
                let psi = heading + ds / TURN_RADIUS;
                (
                    cx + TURN_RADIUS * psi.sin(),
                    cy - TURN_RADIUS * psi.cos(),
                    psi,
                    1.0 / TURN_RADIUS,
                )
            }
        }
    }
}

/// Sum of six sinusoids with random periods, scaled to unit RMS.
#[derive(Debug, Clone)]
pub(crate) struct Wobble {
    terms: [(f64, f64, f64); 6],
}

impl Wobble {
    pub(crate) fn new<R: Rng>(rng: &mut R, min_period: f64, max_period: f64) -> Self {
        let mut terms = [(0.0, 0.0, 0.0); 6];
        let (lo, hi) = (min_period.ln(), max_period.ln());
        for t in terms.iter_mut() {
            let period = (lo + rng.random::<f64>() * (hi - lo)).exp();
            *t = (0.5 + rng.random::<f64>(), 2.0 * PI / period, 2.0 * PI * rng.random::<f64>());
        }
        let rms = (terms.iter().map(|t| t.0 * t.0).sum::<f64>() / 2.0).sqrt();
        for t in terms.iter_mut() {
            t.0 /= rms;
        }
        Wobble { terms }
    }

    pub(crate) fn at(&self, t: f64) -> f64 {
        self.terms.iter().map(|(a, w, p)| a * (w * t + p).sin()).sum()
    }
}

fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * (3.0 - 2.0 * x)
}

/// Geometry and speed of a circuit flown in a given time.
#[derive(Debug, Clone)]
struct FlightPlan {
    circuit: Circuit,
    speed: SpeedSchedule,
    glide: f64,
    decel: f64,
}

impl FlightPlan {
    fn new(half_span: f64, glide: f64, touchdown_speed: f64, decel: f64) -> Self {
        let circuit = Circuit::new(half_span);
        let speed = SpeedSchedule { length: circuit.length, touchdown_speed };
        FlightPlan { circuit, speed, glide, decel }
    }

    /// Reference height above the runway at distance `s` from liftoff.
    fn height(&self, s: f64) -> f64 {
        (CLIMB_GRADIENT * s).min(PATTERN_HEIGHT).min(self.glide * (self.circuit.length - s)).max(0.0)
    }

    fn climb_crossing(&self) -> f64 {
        CONTACT_AGL / CLIMB_GRADIENT
    }

    fn descent_crossing(&self) -> f64 {
        self.circuit.length - CONTACT_AGL / self.glide
    }

    /// Seconds between the two 0.5 m crossings.
    fn airborne_time(&self) -> f64 {
        self.speed.time_at(self.descent_crossing()) - self.speed.time_at(self.climb_crossing())
    }

    fn landing_time(&self) -> f64 {
        liftoff_time() + self.speed.time_at(self.circuit.length)
    }

    fn end_time(&self) -> f64 {
        self.landing_time() + self.speed.touchdown_speed / self.decel + STOP_HOLD_S
    }

    /// Nominal state at time `t`: runway-frame position, heading, curvature,
    /// speed, reference height and the height gradient along the path.
    fn state(&self, t: f64) -> NominalState {
        let on_runway = |x: f64, v: f64| NominalState { x, y: 0.0, heading: 0.0, curvature: 0.0, speed: v, height: 0.0, gradient: 0.0, airborne: false };
        if t < IDLE_S {
            return on_runway(0.0, 0.0);
        }
        let t_lift = liftoff_time();
        if t < t_lift {
            let tau = t - IDLE_S;
            return on_runway(0.5 * ROLL_ACCEL * tau * tau, ROLL_ACCEL * tau);
        }
        let t_land = self.landing_time();
        if t < t_land {
            let s = self.speed.distance_at(t - t_lift);
            let (x, y, heading, curvature) = self.circuit.at(s);
            let h = self.height(s);
            let gradient = if h <= 0.0 {
                0.0
            } else if h == CLIMB_GRADIENT * s {
                CLIMB_GRADIENT
            } else if h == PATTERN_HEIGHT {
                0.0
            } else {
                -self.glide
            };
            return NominalState { x, y, heading, curvature, speed: self.speed.speed(s), height: h, gradient, airborne: true };
        }
        let v0 = self.speed.touchdown_speed;
        let tau = (t - t_land).min(v0 / self.decel);
        on_runway(
            TOUCHDOWN_X + v0 * tau - 0.5 * self.decel * tau * tau,
            v0 - self.decel * tau,
        )
    }
}

#[derive(Debug, Clone, Copy)]
struct NominalState {
    x: f64,
    y: f64,
    heading: f64,
    curvature: f64,
    speed: f64,
    height: f64,
    gradient: f64,
    airborne: bool,
}

/// Circuit size whose airborne time matches `flight_time`.
fn plan_for(t: &FlightTargets) -> FlightPlan {
    let make = |x: f64| FlightPlan::new(x, t.glide_gradient, t.touchdown_speed, t.rollout_decel);
    let (mut lo, mut hi) = (TURN_RADIUS + liftoff_x() + 1.0, 1.0e6);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if make(mid).airborne_time() < t.flight_time {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    make(0.5 * (lo + hi))
}

/// Exponent and scale of `d = scale * u^exponent` giving the requested mean
/// and population SD of `d` over `u`.
fn deviation_shape(u: &[f64], mean: f64, sd: f64) -> (f64, f64) {
    let logs: Vec<f64> = u.iter().map(|v| if *v > 0.0 { v.ln() } else { f64::NEG_INFINITY }).collect();
    let moments = |p: f64| {
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = logs.iter().map(|l| (p * (l - top)).exp()).collect();
        let n = w.len() as f64;
        let m = w.iter().sum::<f64>() / n;
        let var = w.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n;
        (m, var.sqrt() / m, top)
    };
    let target_cv = sd / mean;
    let (mut lo, mut hi) = (1e-3f64.ln(), 60f64.ln());
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if moments(mid.exp()).1 < target_cv {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = (0.5 * (lo + hi)).exp();
    let (m, _, top) = moments(p);
    // d = scale * exp(p (ln u - top)) with scale chosen for the mean.
    (p, mean / m * (-p * top).exp())
}

/// Generate one flight log. `rng` drives the noise channels only; the
/// participant-level targets come from `targets`.
pub fn generate_flight<R: Rng>(targets: &FlightTargets, hz: f64, rng: &mut R) -> (Vec<FlightSample>, FlightTruth) {
    let plan = plan_for(targets);
    let frame = LocalFrame::new(ORIGIN_LON, ORIGIN_LAT);
    let dt = 1.0 / hz;
    let n = (plan.end_time() * hz).floor() as usize + 1;
    let times: Vec<f64> = (0..n).map(|k| round_to(k as f64 * dt, 6)).collect();
    let nominal: Vec<NominalState> = times.iter().map(|&t| plan.state(t)).collect();

    let t_lift = liftoff_time();
    let t_a = t_lift + plan.speed.time_at(plan.climb_crossing());
    let t_b = t_lift + plan.speed.time_at(plan.descent_crossing());

    // Detection on the undeviated stream fixes the window the error
    // statistics are computed over; the deviation is zero near both ends, so
    // the window does not move once it is applied.
    let base: Vec<FlightSample> = times
        .iter()
        .zip(&nominal)
        .map(|(&t, s)| FlightSample {
            timestamp: t,
            roll: 0.0,
            pitch: 0.0,
            yaw: 0.0,
            longitude: 0.0,
            latitude: 0.0,
            agl: round_to(s.height, 3),
            asl: 0.0,
            tas: s.speed,
            gs: s.speed,
            vertical_speed: 0.0,
            aoa: 0.0,
            rudder_input: 0.0,
            elevator_input: 0.0,
            roll_input: 0.0,
            nearest_ref: [0.0; 3],
        })
        .collect();
    let td = detect_landing(&base).expect("generated circuit lands").touchdown_index;
    let to = detect_takeoff(&base, LandingParams::default()).expect("generated circuit takes off");

    let drift = Wobble::new(rng, 60.0, 400.0);
    let envelope = |t: f64| smoothstep((t - t_a) / DEVIATION_RAMP_S) * smoothstep((t_b - t) / DEVIATION_RAMP_S);
    let raw: Vec<f64> = times
        .iter()
        .map(|&t| envelope(t) * (DEVIATION_LOG_SD * drift.at(t)).exp())
        .collect();
    let deviation: Vec<f64> = if targets.path_error_mean > 0.0 {
        let (p, c) = deviation_shape(&raw[to..=td], targets.path_error_mean, targets.path_error_sd);
        raw.iter().map(|&u| if u > 0.0 { c * u.powf(p) } else { 0.0 }).collect()
    } else {
        vec![0.0; n]
    };

    let (cos_v, sin_v) = (targets.vertical_angle.cos(), targets.vertical_angle.sin());
    let flown: Vec<(f64, f64, f64)> = nominal
        .iter()
        .zip(&deviation)
        .map(|(s, d)| {
            // Outward (right-hand) normal of a left-hand circuit.
            let (nx, ny) = (s.heading.sin(), -s.heading.cos());
            (s.x + d * cos_v * nx, s.y + d * cos_v * ny, s.height + d * sin_v)
        })
        .collect();
    let diff = |k: usize, f: &dyn Fn(usize) -> f64| {
        let (a, b) = (k.saturating_sub(1), (k + 1).min(n - 1));
        if a == b {
            0.0
        } else {
            (f(b) - f(a)) / (times[b] - times[a])
        }
    };

    let roll_w = Wobble::new(rng, 3.0, 40.0);
    let pitch_w = Wobble::new(rng, 3.0, 40.0);
    let aoa_w = Wobble::new(rng, 3.0, 40.0);
    let tas_w = Wobble::new(rng, 5.0, 60.0);
    let inputs_w = [Wobble::new(rng, 2.0, 20.0), Wobble::new(rng, 2.0, 20.0), Wobble::new(rng, 2.0, 20.0)];
    let flare = |t: f64| smoothstep((t - (t_b - 10.0)) / 2.0);
    let hold = |t: f64| smoothstep((t - (t_b - 5.0)) / 2.0) * smoothstep((t_b + 2.5 - t) / 2.0);

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let t = times[k];
        let s = &nominal[k];
        let (x, y, h) = flown[k];
        let (lon, lat) = frame.to_geodetic(x, y);
        let (ref_lon, ref_lat) = frame.to_geodetic(s.x, s.y);
        let gs = diff(k, &|j| flown[j].0).hypot(diff(k, &|j| flown[j].1));
        let vs = diff(k, &|j| flown[j].2);
        let (mut roll, mut pitch, mut aoa, mut tas) = (0.0, 0.0, 0.0, s.speed);
        let (mut rudder, mut elevator, mut roll_in) = (0.0, 0.0, 0.0);
        if s.airborne {
            let bank = -(s.speed * s.speed * s.curvature / G).atan().to_degrees();
            roll = bank + targets.roll_noise * roll_w.at(t);
            aoa = targets.aoa_base * (CRUISE_SPEED / s.speed).powi(2) + targets.aoa_noise * aoa_w.at(t);
            let path = s.gradient.atan().to_degrees() + 0.5 * targets.aoa_base;
            let free = path + targets.pitch_noise * pitch_w.at(t);
            let w = hold(t);
            pitch = free + w * (targets.landing_pitch - free);
            tas = s.speed + 10.0 * targets.input_noise * tas_w.at(t);
            let f = flare(t);
            roll_in = (roll / 60.0 + targets.input_noise * inputs_w[0].at(t)).clamp(-1.0, 1.0);
            elevator = (0.05 + targets.input_noise * inputs_w[1].at(t) + f * targets.elevator_flare).clamp(-1.0, 1.0);
            rudder = (targets.input_noise * inputs_w[2].at(t) + f * targets.rudder_flare).clamp(-1.0, 1.0);
        } else if t >= t_b && t < t_b + 2.5 {
            // Nose lowers after the wheels touch.
            pitch = targets.landing_pitch * hold(t);
        }
        let yaw = (90.0 - s.heading.to_degrees()).rem_euclid(360.0);
        out.push(FlightSample {
            timestamp: t,
            roll: round_to(roll, 3),
            pitch: round_to(pitch, 3),
            yaw: round_to(yaw, 3) % 360.0,
            longitude: round_to(lon, 9),
            latitude: round_to(lat, 9),
            agl: round_to(h, 3),
            asl: round_to(h + FIELD_ELEVATION, 3),
            tas: round_to(tas.max(0.0), 3),
            gs: round_to(gs, 3),
            vertical_speed: round_to(vs, 3),
            aoa: round_to(aoa, 3),
            rudder_input: round_to(rudder, 4),
            elevator_input: round_to(elevator, 4),
            roll_input: round_to(roll_in, 4),
            nearest_ref: [round_to(ref_lon, 9), round_to(ref_lat, 9), round_to(s.height + FIELD_ELEVATION, 3)],
        });
    }
    let v0 = targets.touchdown_speed;
    let stop_time = plan.landing_time() + (v0 - 1.0).max(0.0) / targets.rollout_decel;
    let truth = FlightTruth { takeoff_time: t_a, touchdown_time: t_b, stop_time, targets: targets.clone() };
    (out, truth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::flight::extract_qar_features;
    use crate::seed;
    use crate::synth::profile::default_profiles;

    fn targets(u: f64) -> FlightTargets {
        let (e, _) = default_profiles();
        FlightTargets::draw(&e.flight, &[u; FLIGHT_DRAWS])
    }

    #[test]
    fn schedule_inverts() {
        let s = SpeedSchedule { length: 20_000.0, touchdown_speed: 32.0 };
        for d in [0.0, 100.0, 560.0, 5000.0, 18_600.0, 19_999.0] {
            assert!((s.distance_at(s.time_at(d)) - d).abs() < 1e-6);
        }
    }

    #[test]
    fn circuit_is_continuous() {
        let c = Circuit::new(3000.0);
        for (start, _, _) in c.legs.iter().skip(1) {
            let a = c.at(start - 1e-7);
            let b = c.at(*start);
            assert!((a.0 - b.0).abs() < 1e-3 && (a.1 - b.1).abs() < 1e-3, "{a:?} {b:?}");
        }
        let end = c.at(c.length);
        assert!((end.0 - TOUCHDOWN_X).abs() < 1e-6 && end.1.abs() < 1e-6);
    }

    #[test]
    fn flight_time_and_errors_hit_targets() {
        let t = targets(0.3);
        let mut rng = seed::rng(3);
        let (log, truth) = generate_flight(&t, 30.0, &mut rng);
        let q = extract_qar_features(&log).unwrap();
        assert!((q.total_flight_time - t.flight_time).abs() <= 1.0 / 30.0 + 1e-6, "{} {}", q.total_flight_time, t.flight_time);
        assert!((q.dist_err_mean / t.path_error_mean - 1.0).abs() < 1e-3, "{} {}", q.dist_err_mean, t.path_error_mean);
        assert!((q.dist_err_sd / t.path_error_sd - 1.0).abs() < 1e-2, "{} {}", q.dist_err_sd, t.path_error_sd);
        assert!((q.pitch_1s - t.landing_pitch).abs() < 1e-2);
        assert!(q.slide_length > 0.0);
        assert!(truth.touchdown_time > truth.takeoff_time);
    }
}
