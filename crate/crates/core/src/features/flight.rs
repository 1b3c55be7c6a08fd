//! Flight-recorder (QAR) features, landing/takeoff detection and the four
//! headline performance indicators.

use crate::geo::LocalFrame;
use crate::telemetry::FlightSample;

use super::FeatureError;

/// A scalar column of [`FlightSample`] addressable by [`sample_at`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlightField {
    Roll,
    Pitch,
    Yaw,
    Agl,
    Asl,
    Tas,
    Gs,
    VerticalSpeed,
    Aoa,
    RudderInput,
    ElevatorInput,
    RollInput,
}

impl FlightField {
    pub fn get(self, s: &FlightSample) -> f64 {
        match self {
            FlightField::Roll => s.roll,
            FlightField::Pitch => s.pitch,
            FlightField::Yaw => s.yaw,
            FlightField::Agl => s.agl,
            FlightField::Asl => s.asl,
            FlightField::Tas => s.tas,
            FlightField::Gs => s.gs,
            FlightField::VerticalSpeed => s.vertical_speed,
            FlightField::Aoa => s.aoa,
            FlightField::RudderInput => s.rudder_input,
            FlightField::ElevatorInput => s.elevator_input,
            FlightField::RollInput => s.roll_input,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandingParams {
    /// Ground contact when AGL is at or below this, meters.
    pub agl_threshold: f64,
    /// Contact (or lift-off) must hold this long, seconds.
    pub dwell_s: f64,
    /// AGL that proves the aircraft was airborne, meters.
    pub airborne_agl: f64,
    /// Ground speed below which the aircraft is stopped, m/s.
    pub stop_speed: f64,
}

impl Default for LandingParams {
    fn default() -> Self {
        LandingParams {
            agl_threshold: 0.5,
            dwell_s: 2.0,
            airborne_agl: 5.0,
            stop_speed: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandingEvent {
    pub touchdown_time: f64,
    pub full_stop_time: f64,
    pub touchdown_index: usize,
    pub stop_index: usize,
    /// The aircraft never slowed below the stop speed; the stop is the last sample.
    pub stop_flagged: bool,
}

const TIME_EPS: f64 = 1e-9;

/// First index from `from` where `pred` starts holding and keeps holding
/// for at least `dwell` seconds of samples.
fn first_sustained(
    stream: &[FlightSample],
    from: usize,
    dwell: f64,
    pred: impl Fn(&FlightSample) -> bool,
) -> Option<usize> {
    let n = stream.len();
    let mut i = from;
    while i < n {
        if !pred(&stream[i]) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < n && pred(&stream[j + 1]) {
            j += 1;
        }
        if stream[j].timestamp - stream[i].timestamp >= dwell - TIME_EPS {
            return Some(i);
        }
        i = j + 1;
    }
    None
}

pub fn detect_landing(stream: &[FlightSample]) -> Result<LandingEvent, FeatureError> {
    detect_landing_with(stream, LandingParams::default())
}

pub fn detect_landing_with(
    stream: &[FlightSample],
    params: LandingParams,
) -> Result<LandingEvent, FeatureError> {
    if stream.is_empty() {
        return Err(FeatureError::EmptyStream);
    }
    let airborne = stream
        .iter()
        .position(|s| s.agl > params.airborne_agl)
        .ok_or(FeatureError::NeverAirborne)?;
    let td = first_sustained(stream, airborne, params.dwell_s, |s| s.agl <= params.agl_threshold)
        .ok_or(FeatureError::NoLanding)?;
    let (stop, flagged) = match stream[td..].iter().position(|s| s.gs < params.stop_speed) {
        Some(k) => (td + k, false),
        None => (stream.len() - 1, true),
    };
    if flagged {
        log::warn!("no full stop before end of flight log; using last sample");
    }
    Ok(LandingEvent {
        touchdown_time: stream[td].timestamp,
        full_stop_time: stream[stop].timestamp,
        touchdown_index: td,
        stop_index: stop,
        stop_flagged: flagged,
    })
}

/// Index of the first sample with AGL above the threshold for the dwell time.
pub fn detect_takeoff(stream: &[FlightSample], params: LandingParams) -> Result<usize, FeatureError> {
    if stream.is_empty() {
        return Err(FeatureError::EmptyStream);
    }
    first_sustained(stream, 0, params.dwell_s, |s| s.agl > params.agl_threshold)
        .ok_or(FeatureError::NeverAirborne)
}

/// Linear interpolation of `field` at time `t`; exact at sample times.
pub fn sample_at(stream: &[FlightSample], t: f64, field: FlightField) -> Result<f64, FeatureError> {
    let (first, last) = match stream {
        [] => return Err(FeatureError::EmptyStream),
        [f, .., l] => (f, l),
        [only] => (only, only),
    };
    if !(t >= first.timestamp && t <= last.timestamp) {
        return Err(FeatureError::OutsideSpan {
            t,
            start: first.timestamp,
            end: last.timestamp,
        });
    }
    let k = stream.partition_point(|s| s.timestamp < t);
    let b = &stream[k];
    if b.timestamp == t || k == 0 {
        return Ok(field.get(b));
    }
    let a = &stream[k - 1];
    let w = (t - a.timestamp) / (b.timestamp - a.timestamp);
    let (va, vb) = (field.get(a), field.get(b));
    Ok(va + w * (vb - va))
}

/// Centered moving average; the window shrinks symmetrically at the ends.
pub fn moving_average(values: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    let n = values.len();
    (0..n)
        .map(|i| {
            let h = half.min(i).min(n - 1 - i);
            let slice = &values[i - h..=i + h];
            slice.iter().sum::<f64>() / slice.len() as f64
        })
        .collect()
}

/// Five-point central first and second derivatives at interior index `i`.
fn stencil(f: &[f64], t: &[f64], i: usize) -> (f64, f64) {
    let h = (t[i + 2] - t[i - 2]) / 4.0;
    let d1 = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    let d2 = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
    (d1, d2)
}

/// Planar curvature `|x'y'' - y'x''| / (x'^2 + y'^2)^1.5` at each interior
/// sample with horizontal speed above 1 m/s; `None` elsewhere.
pub fn planar_curvature(t: &[f64], x: &[f64], y: &[f64]) -> Vec<Option<f64>> {
    let n = t.len();
    (0..n)
        .map(|i| {
            if i < 2 || i + 2 >= n {
                return None;
            }
            let (x1, x2) = stencil(x, t, i);
            let (y1, y2) = stencil(y, t, i);
            let speed2 = x1 * x1 + y1 * y1;
            (speed2 > 1.0).then(|| (x1 * y2 - y1 * x2).abs() / speed2.powf(1.5))
        })
        .collect()
}

/// Table of flight features, in registry order.
#[derive(Debug, Clone, PartialEq)]
pub struct QarFeatures {
    pub ldg_time: f64,
    pub vert_accel_landing: f64,
    pub aoa_1s: f64,
    pub aoa_8s: f64,
    pub aoa_min: f64,
    pub aoa_max: f64,
    pub pitch_1s: f64,
    pub pitch_8s: f64,
    pub rudder_1s: f64,
    pub rudder_8s: f64,
    pub elevator_1s: f64,
    pub elevator_8s: f64,
    pub rollinput_1s: f64,
    pub rollinput_8s: f64,
    pub tas_1s: f64,
    pub tas_8s: f64,
    pub gs_1s: f64,
    pub gs_8s: f64,
    pub velocity_descent_mean: f64,
    pub longitude_err_mean: f64,
    pub longitude_err_sd: f64,
    pub latitude_err_mean: f64,
    pub latitude_err_sd: f64,
    pub height_err_mean: f64,
    pub height_err_sd: f64,
    pub dist_err_mean: f64,
    pub dist_err_sd: f64,
    pub rou_min: f64,
    pub rou_max: f64,
    pub acc_h_max: f64,
    pub acc_xy_max: f64,
    pub roll_min: f64,
    pub roll_max: f64,
    pub pitch_min: f64,
    pub pitch_max: f64,
    pub slide_length: f64,
    pub total_flight_time: f64,
}

impl QarFeatures {
    pub const NAMES: [&'static str; 37] = [
        "ldg_time",
        "vert_accel_landing",
        "aoa_1s",
        "aoa_8s",
        "aoa_min",
        "aoa_max",
        "pitch_1s",
        "pitch_8s",
        "rudder_1s",
        "rudder_8s",
        "elevator_1s",
        "elevator_8s",
        "rollinput_1s",
        "rollinput_8s",
        "tas_1s",
        "tas_8s",
        "gs_1s",
        "gs_8s",
        "velocity_descent_mean",
        "longitude_err_mean",
        "longitude_err_sd",
        "latitude_err_mean",
        "latitude_err_sd",
        "height_err_mean",
        "height_err_sd",
        "dist_err_mean",
        "dist_err_sd",
        "rou_min",
        "rou_max",
        "acc_h_max",
        "acc_xy_max",
        "roll_min",
        "roll_max",
        "pitch_min",
        "pitch_max",
        "slide_length",
        "total_flight_time",
    ];

    /// Values in the order of [`QarFeatures::NAMES`]. Missing
    /// before-landing samples are NaN.
    pub fn values(&self) -> [f64; 37] {
        [
            self.ldg_time,
            self.vert_accel_landing,
            self.aoa_1s,
            self.aoa_8s,
            self.aoa_min,
            self.aoa_max,
            self.pitch_1s,
            self.pitch_8s,
            self.rudder_1s,
            self.rudder_8s,
            self.elevator_1s,
            self.elevator_8s,
            self.rollinput_1s,
            self.rollinput_8s,
            self.tas_1s,
            self.tas_8s,
            self.gs_1s,
            self.gs_8s,
            self.velocity_descent_mean,
            self.longitude_err_mean,
            self.longitude_err_sd,
            self.latitude_err_mean,
            self.latitude_err_sd,
            self.height_err_mean,
            self.height_err_sd,
            self.dist_err_mean,
            self.dist_err_sd,
            self.rou_min,
            self.rou_max,
            self.acc_h_max,
            self.acc_xy_max,
            self.roll_min,
            self.roll_max,
            self.pitch_min,
            self.pitch_max,
            self.slide_length,
            self.total_flight_time,
        ]
    }
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Per-sample offsets from the nearest centerline point over `range`:
/// (east, north, up, euclidean), meters.
pub fn centerline_errors(
    stream: &[FlightSample],
    frame: &LocalFrame,
    range: std::ops::RangeInclusive<usize>,
) -> Vec<[f64; 4]> {
    stream[range]
        .iter()
        .map(|s| {
            let (e, n) = frame.offset(s.longitude, s.latitude, s.nearest_ref[0], s.nearest_ref[1]);
            let h = s.asl - s.nearest_ref[2];
            [e, n, h, (e * e + n * n + h * h).sqrt()]
        })
        .collect()
}

pub fn extract_qar_features(stream: &[FlightSample]) -> Result<QarFeatures, FeatureError> {
    extract_qar_features_with(stream, LandingParams::default())
}

pub fn extract_qar_features_with(
    stream: &[FlightSample],
    params: LandingParams,
) -> Result<QarFeatures, FeatureError> {
    let landing = detect_landing_with(stream, params)?;
    let takeoff = detect_takeoff(stream, params)?;
    let td = landing.touchdown_index;
    let td_t = landing.touchdown_time;
    let to = takeoff.min(td);
    let airborne = to..=td;

    let before = |secs: f64, field: FlightField| -> f64 {
        sample_at(stream, td_t - secs, field).unwrap_or(f64::NAN)
    };

    let frame = LocalFrame::new(stream[0].longitude, stream[0].latitude);
    let errs = centerline_errors(stream, &frame, airborne.clone());
    let col = |k: usize| errs.iter().map(|e| e[k]).collect::<Vec<_>>();
    let (lon_m, lon_sd) = mean_sd(&col(0));
    let (lat_m, lat_sd) = mean_sd(&col(1));
    let (h_m, h_sd) = mean_sd(&col(2));
    let (d_m, d_sd) = mean_sd(&col(3));

    let t: Vec<f64> = stream.iter().map(|s| s.timestamp).collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = stream
        .iter()
        .map(|s| frame.to_local(s.longitude, s.latitude))
        .unzip();
    let xs = moving_average(&xs, 5);
    let ys = moving_average(&ys, 5);
    let vs = moving_average(&stream.iter().map(|s| s.vertical_speed).collect::<Vec<_>>(), 5);
    let n = stream.len();
    let interior = |i: &usize| *i >= 2 && *i + 2 < n;

    let curvature = planar_curvature(&t, &xs, &ys);
    let (rou_min, rou_max) = min_max(airborne.clone().filter_map(|i| curvature[i]));
    let acc_h = |i: usize| stencil(&vs, &t, i).0.abs();
    let acc_h_max = airborne.clone().filter(interior).map(acc_h).fold(0.0, f64::max);
    let acc_xy_max = airborne
        .clone()
        .filter(interior)
        .map(|i| {
            let ax = stencil(&xs, &t, i).1;
            let ay = stencil(&ys, &t, i).1;
            ax.hypot(ay)
        })
        .fold(0.0, f64::max);
    let vert_accel_landing = (0..n)
        .filter(|i| interior(i) && (t[*i] - td_t).abs() <= 0.5 + TIME_EPS)
        .map(acc_h)
        .fold(0.0, f64::max);

    let descent: Vec<f64> = airborne
        .clone()
        .filter(|&i| t[i] >= td_t - 30.0 - TIME_EPS)
        .map(|i| stream[i].vertical_speed)
        .collect();
    let velocity_descent_mean = mean_sd(&descent).0;

    let seg = &stream[airborne.clone()];
    let (aoa_min, aoa_max) = min_max(seg.iter().map(|s| s.aoa));
    let (roll_min, roll_max) = min_max(seg.iter().map(|s| s.roll));
    let (pitch_min, pitch_max) = min_max(seg.iter().map(|s| s.pitch));

    let slide_length = stream[td..=landing.stop_index]
        .windows(2)
        .map(|w| {
            let (e, n) = frame.offset(w[0].longitude, w[0].latitude, w[1].longitude, w[1].latitude);
            e.hypot(n)
        })
        .sum();

    let finite_or_zero = |v: f64| if v.is_finite() { v } else { 0.0 };
    Ok(QarFeatures {
        ldg_time: td_t,
        vert_accel_landing,
        aoa_1s: before(1.0, FlightField::Aoa),
        aoa_8s: before(8.0, FlightField::Aoa),
        aoa_min,
        aoa_max,
        pitch_1s: before(1.0, FlightField::Pitch),
        pitch_8s: before(8.0, FlightField::Pitch),
        rudder_1s: before(1.0, FlightField::RudderInput),
        rudder_8s: before(8.0, FlightField::RudderInput),
        elevator_1s: before(1.0, FlightField::ElevatorInput),
        elevator_8s: before(8.0, FlightField::ElevatorInput),
        rollinput_1s: before(1.0, FlightField::RollInput),
        rollinput_8s: before(8.0, FlightField::RollInput),
        tas_1s: before(1.0, FlightField::Tas),
        tas_8s: before(8.0, FlightField::Tas),
        gs_1s: before(1.0, FlightField::Gs),
        gs_8s: before(8.0, FlightField::Gs),
        velocity_descent_mean,
        longitude_err_mean: lon_m,
        longitude_err_sd: lon_sd,
        latitude_err_mean: lat_m,
        latitude_err_sd: lat_sd,
        height_err_mean: h_m,
        height_err_sd: h_sd,
        dist_err_mean: d_m,
        dist_err_sd: d_sd,
        rou_min: finite_or_zero(rou_min),
        rou_max: finite_or_zero(rou_max),
        acc_h_max,
        acc_xy_max,
        roll_min,
        roll_max,
        pitch_min,
        pitch_max,
        slide_length,
        total_flight_time: td_t - stream[to].timestamp,
    })
}

/// The four headline indicators used for group comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerformanceIndicators {
    pub total_flight_time: f64,
    pub pitch_1s: f64,
    pub dist_err_mean: f64,
    pub dist_err_sd: f64,
}

impl From<&QarFeatures> for PerformanceIndicators {
    fn from(q: &QarFeatures) -> Self {
        PerformanceIndicators {
            total_flight_time: q.total_flight_time,
            pitch_1s: q.pitch_1s,
            dist_err_mean: q.dist_err_mean,
            dist_err_sd: q.dist_err_sd,
        }
    }
}

pub fn performance_indicators(stream: &[FlightSample]) -> Result<PerformanceIndicators, FeatureError> {
    Ok((&extract_qar_features(stream)?).into())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    const LON0: f64 = 121.0;
    const LAT0: f64 = 31.0;

    /// Straight-line flight on the centerline: taxi, climb to 50 m, level,
    /// descend, land, roll to a stop. 10 Hz.
    pub(crate) fn scripted_flight() -> Vec<FlightSample> {
        let frame = LocalFrame::new(LON0, LAT0);
        let mut out = Vec::new();
        let dt = 0.1;
        let mut x = 0.0;
        for k in 0..=1200 {
            let t = k as f64 * dt;
            let (agl, gs, vs) = match t {
                t if t < 10.0 => (0.0, 30.0, 0.0),
                t if t < 20.0 => ((t - 10.0) * 5.0, 30.0, 5.0),
                t if t < 80.0 => (50.0, 30.0, 0.0),
                t if t < 90.0 => (50.0 - (t - 80.0) * 5.0, 30.0, -5.0),
                t if t < 100.0 => (0.0, 30.0 - (t - 90.0) * 3.0, 0.0),
                _ => (0.0, 0.0, 0.0),
            };
            let (lon, lat) = frame.to_geodetic(x, 0.0);
            out.push(FlightSample {
                timestamp: t,
                roll: 0.0,
                pitch: if vs > 0.0 { 8.0 } else if vs < 0.0 { -3.0 } else { 0.0 },
                yaw: 90.0,
                longitude: lon,
                latitude: lat,
                agl,
                asl: agl + 5.0,
                tas: gs,
                gs,
                vertical_speed: vs,
                aoa: 2.0,
                rudder_input: 0.0,
                elevator_input: 0.0,
                roll_input: 0.0,
                nearest_ref: [lon, lat, agl + 5.0],
            });
            x += gs * dt;
        }
        out
    }

    #[test]
    fn scripted_landing_and_takeoff() {
        let s = scripted_flight();
        let ev = detect_landing(&s).unwrap();
        assert!((ev.touchdown_time - 90.0).abs() <= 0.1 + 1e-9, "{ev:?}");
        // 30 m/s at -3 m/s^2 passes below 1 m/s after 9.67 s.
        assert!((ev.full_stop_time - 99.7).abs() <= 0.1 + 1e-9, "{ev:?}");
        assert!(!ev.stop_flagged);
        let to = detect_takeoff(&s, LandingParams::default()).unwrap();
        assert!((s[to].timestamp - 10.2).abs() < 0.1 + 1e-9);
    }

    #[test]
    fn centerline_flight_has_zero_error() {
        let q = extract_qar_features(&scripted_flight()).unwrap();
        assert!(q.dist_err_mean.abs() < 1e-6 && q.dist_err_sd.abs() < 1e-6, "{q:?}");
        assert!(q.rou_max < 1e-6);
        assert!((q.total_flight_time - 79.8).abs() < 0.2);
        assert!((q.pitch_1s + 3.0).abs() < 1e-12);
        // Slide length: 10 s decelerating from 30 m/s at 3 m/s^2 = 150 m.
        assert!((q.slide_length - 150.0).abs() < 5.0, "{}", q.slide_length);
        assert!(q.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn never_airborne_is_an_error() {
        let mut s = scripted_flight();
        for x in s.iter_mut() {
            x.agl = x.agl.min(4.0);
        }
        assert!(matches!(detect_landing(&s), Err(FeatureError::NeverAirborne)));
    }

    #[test]
    fn short_dip_is_not_a_touchdown() {
        let mut s = scripted_flight();
        for x in s.iter_mut() {
            if x.timestamp >= 40.0 && x.timestamp < 40.5 {
                x.agl = 0.3;
            }
        }
        let ev = detect_landing(&s).unwrap();
        assert!(ev.touchdown_time > 85.0);
    }

    #[test]
    fn no_landing_when_contact_too_short() {
        let s: Vec<_> = scripted_flight().into_iter().filter(|x| x.timestamp <= 91.0).collect();
        assert!(matches!(detect_landing(&s), Err(FeatureError::NoLanding)));
    }

    #[test]
    fn interpolation() {
        let s = scripted_flight();
        assert_eq!(sample_at(&s, 15.0, FlightField::Agl).unwrap(), s[150].agl);
        let mid = sample_at(&s, 10.05, FlightField::Agl).unwrap();
        assert!((mid - 0.5 * (s[100].agl + s[101].agl)).abs() < 1e-12);
        assert!(sample_at(&s, -1.0, FlightField::Agl).is_err());
        assert!(sample_at(&s, 1e6, FlightField::Agl).is_err());
    }

    #[test]
    fn eight_second_features_missing_on_short_log() {
        let s: Vec<_> = scripted_flight()
            .into_iter()
            .filter(|x| x.timestamp >= 85.0)
            .collect();
        // Starts airborne at 25 m; takeoff is the first sample.
        let q = extract_qar_features(&s).unwrap();
        assert!(q.aoa_8s.is_nan() && q.gs_8s.is_nan());
        assert!(q.aoa_1s.is_finite());
    }

    #[test]
    fn circle_curvature() {
        let r = 500.0;
        let t: Vec<f64> = (0..400).map(|k| k as f64 * 0.1).collect();
        let w = 40.0 / r;
        let x: Vec<f64> = t.iter().map(|t| r * (w * t).cos()).collect();
        let y: Vec<f64> = t.iter().map(|t| r * (w * t).sin()).collect();
        let xs = moving_average(&x, 5);
        let ys = moving_average(&y, 5);
        for k in planar_curvature(&t, &xs, &ys).into_iter().skip(4).take(392) {
            let k = k.unwrap();
            assert!((k * r - 1.0).abs() < 0.05, "{k}");
        }
    }

    #[test]
    fn moving_average_edges() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let m = moving_average(&v, 5);
        assert_eq!(m, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    }
}
