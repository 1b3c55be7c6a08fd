//! Eye-movement and AOI dwell features from a gaze stream.
//!
//! Only the left eye feeds the features; right-eye columns are parsed and
//! kept on the samples but ignored here.

use crate::telemetry::{AoiName, GazeSample};

use super::FeatureError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixationParams {
    /// I-VT angular velocity threshold, degrees per second.
    pub velocity_threshold_deg_s: f64,
    /// Fixation candidates shorter than this are discarded, seconds.
    pub min_duration_s: f64,
}

impl Default for FixationParams {
    fn default() -> Self {
        FixationParams {
            velocity_threshold_deg_s: 30.0,
            min_duration_s: 0.060,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixation {
    pub start: f64,
    pub end: f64,
    /// Normalized mean direction of the member samples.
    pub centroid_dir: [f64; 3],
    pub duration: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FixationScan {
    pub fixations: Vec<Fixation>,
    /// Samples dropped because their left gaze direction had zero norm.
    pub skipped_samples: usize,
}

fn unit(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 0.0).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

/// Angle between two unit vectors, degrees.
pub fn angle_deg(a: [f64; 3], b: [f64; 3]) -> f64 {
    let dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0);
    dot.acos().to_degrees()
}

/// Velocity-threshold (I-VT) fixation identification.
///
/// Consecutive valid samples whose angular velocity stays below the
/// threshold form a fixation candidate spanning first to last member
/// sample; candidates shorter than `min_duration_s` are dropped.
pub fn detect_fixations(gaze: &[GazeSample], params: FixationParams) -> FixationScan {
    let mut scan = FixationScan::default();
    let mut run: Vec<(f64, [f64; 3])> = Vec::new();
    let close = |run: &mut Vec<(f64, [f64; 3])>, out: &mut Vec<Fixation>| {
        if run.len() >= 2 {
            let start = run[0].0;
            let end = run[run.len() - 1].0;
            let duration = end - start;
            if duration > 0.0 && duration >= params.min_duration_s {
                let mut c = [0.0; 3];
                for (_, d) in run.iter() {
                    for k in 0..3 {
                        c[k] += d[k];
                    }
                }
                out.push(Fixation {
                    start,
                    end,
                    centroid_dir: unit(c).unwrap_or(run[0].1),
                    duration,
                });
            }
        }
        run.clear();
    };
    for s in gaze {
        let Some(dir) = unit(s.gaze_dir_left) else {
            scan.skipped_samples += 1;
            continue;
        };
        if let Some(&(t_prev, d_prev)) = run.last() {
            let dt = s.timestamp - t_prev;
            let velocity = angle_deg(d_prev, dir) / dt;
            if !(velocity < params.velocity_threshold_deg_s) {
                close(&mut run, &mut scan.fixations);
            }
        }
        run.push((s.timestamp, dir));
    }
    close(&mut run, &mut scan.fixations);
    if scan.skipped_samples > 0 {
        log::warn!("{} gaze samples with zero-norm direction skipped", scan.skipped_samples);
    }
    scan
}

/// The seven eye-movement features plus the saccade count.
#[derive(Debug, Clone, PartialEq)]
pub struct EmFeatures {
    pub sd_fix_x: f64,
    pub sd_fix_y: f64,
    pub sd_fix_z: f64,
    pub eye_opening_mean: f64,
    /// AOI changes per second.
    pub aoi_transition_freq: f64,
    /// Milliseconds; 0 when no fixation was found.
    pub fixation_duration_mean: f64,
    pub fixation_count: usize,
    /// Gaps between consecutive fixations.
    pub saccade_count: usize,
}

fn population_sd(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let (n, sum) = values.clone().fold((0usize, 0.0), |(n, s), v| (n + 1, s + v));
    if n == 0 {
        return 0.0;
    }
    let mean = sum / n as f64;
    // Rounding in the mean would leave a tiny spread on constant input.
    let mut rest = values.clone();
    let head = rest.next();
    if rest.all(|v| Some(v) == head) {
        return 0.0;
    }
    let ss: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    (ss / n as f64).sqrt()
}

pub fn extract_em_features(gaze: &[GazeSample]) -> Result<EmFeatures, FeatureError> {
    extract_em_features_with(gaze, FixationParams::default())
}

pub fn extract_em_features_with(
    gaze: &[GazeSample],
    params: FixationParams,
) -> Result<EmFeatures, FeatureError> {
    let (first, last) = match gaze {
        [] => return Err(FeatureError::EmptyStream),
        [f, .., l] => (f, l),
        [only] => (only, only),
    };
    let duration = last.timestamp - first.timestamp;
    if duration <= 0.0 {
        return Err(FeatureError::ZeroDuration);
    }
    let sd = |k: usize| population_sd(gaze.iter().map(move |s| s.gaze_dir_left[k]));
    let eye_opening_mean =
        gaze.iter().map(|s| s.eye_open_left).sum::<f64>() / gaze.len() as f64;
    let transitions = gaze.windows(2).filter(|w| w[0].aoi != w[1].aoi).count();
    let scan = detect_fixations(gaze, params);
    let fixation_count = scan.fixations.len();
    let fixation_duration_mean = if fixation_count == 0 {
        0.0
    } else {
        1000.0 * scan.fixations.iter().map(|f| f.duration).sum::<f64>() / fixation_count as f64
    };
    Ok(EmFeatures {
        sd_fix_x: sd(0),
        sd_fix_y: sd(1),
        sd_fix_z: sd(2),
        eye_opening_mean,
        aoi_transition_freq: transitions as f64 / duration,
        fixation_duration_mean,
        fixation_count,
        saccade_count: fixation_count.saturating_sub(1),
    })
}

/// Share of gaze time on each of the 19 named AOIs.
#[derive(Debug, Clone, PartialEq)]
pub struct AoiFeatures {
    /// Indexed like [`AoiName::NAMED`], fractions in [0, 1].
    pub percent_dwell: [f64; 19],
    /// Time on no AOI or on an unrecognized one.
    pub unknown_share: f64,
}

impl AoiFeatures {
    pub fn dwell(&self, aoi: AoiName) -> f64 {
        aoi.index().map_or(self.unknown_share, |i| self.percent_dwell[i])
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Each sample's label holds until the next sample; the last sample is
/// credited with the median inter-sample gap.
pub fn extract_aoi_features(gaze: &[GazeSample]) -> Result<AoiFeatures, FeatureError> {
    if gaze.is_empty() {
        return Err(FeatureError::EmptyStream);
    }
    let gaps: Vec<f64> = gaze.windows(2).map(|w| w[1].timestamp - w[0].timestamp).collect();
    if gaps.is_empty() {
        return Err(FeatureError::ZeroDuration);
    }
    let last_gap = median(gaps.clone());
    let mut named = [0.0; 19];
    let mut other = 0.0;
    for (s, gap) in gaze.iter().zip(gaps.iter().copied().chain([last_gap])) {
        match s.aoi.and_then(AoiName::index) {
            Some(i) => named[i] += gap,
            None => other += gap,
        }
    }
    let total: f64 = named.iter().sum::<f64>() + other;
    if total <= 0.0 {
        return Err(FeatureError::ZeroDuration);
    }
    Ok(AoiFeatures {
        percent_dwell: named.map(|t| t / total),
        unknown_share: other / total,
    })
}
