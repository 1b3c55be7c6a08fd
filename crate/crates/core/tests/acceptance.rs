//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report reads top to
//! bottom. Exits non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use skyselect::eval::{count_metrics, pairwise_auc, roc_curve, ConfusionMatrix};
use skyselect::features::eye::{detect_fixations, extract_aoi_features, FixationParams};
use skyselect::features::flight::extract_qar_features;
use skyselect::models::logreg;
use skyselect::models::svm::{smo_solve, train_svm, KernelChoice, SvmParams};
use skyselect::select::mic::{equal_frequency_bins, mic_scores, mutual_information};
use skyselect::select::top_k;
use skyselect::stats::{t_test, GroupSummary};
use skyselect::synth::{default_profiles, generate_participant_from, stratified_draws, ClassProfile};
use skyselect::telemetry::AoiName;
use skyselect::{seed, GazeSample};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

// 1. Metric arithmetic from a published confusion matrix.

fn metric_arithmetic() -> Outcome {
    let cm = ConfusionMatrix { tp: 21, fp: 2, tn: 21, fn_: 1 };
    let m = count_metrics(&cm);
    let r4 = |x: f64| (x * 1e4).round() / 1e4;
    let got = [r4(m.acc), r4(m.f1), r4(m.precision), r4(m.recall)];
    let want = [0.9333, 0.9333, 0.9130, 0.9545];
    check(got == want, format!("got {got:?}, want {want:?}"))?;
    // Plain fractions as a second route.
    let exact = [42.0 / 45.0, 42.0 / 45.0, 21.0 / 23.0, 21.0 / 22.0];
    for (g, e) in [m.acc, m.f1, m.precision, m.recall].iter().zip(exact) {
        check((g - e).abs() < 1e-12, format!("{g} vs {e}"))?;
    }
    Ok(format!("acc {} f1 {} precision {} recall {}", got[0], got[1], got[2], got[3]))
}

// 2. t and Cohen's d from printed group summaries (n = 23 per group).

/// (novice mean, novice sd, expert mean, expert sd, t, d)
const FLIGHT_ROWS: [(f64, f64, f64, f64, f64, f64); 4] = [
    (902.32, 336.73, 759.06, 163.58, 1.84, 0.54),
    (-12.54, 29.03, 3.97, 24.43, 2.09, 0.62),
    (873.89, 818.43, 176.67, 205.52, 3.96, 1.17),
    (675.78, 589.07, 211.52, 225.76, 3.53, 1.04),
];

const DWELL_ROWS: [(f64, f64, f64, f64, f64, f64); 4] = [
    (5.32, 4.98, 8.56, 5.45, 2.11, 0.64),
    (31.03, 12.2, 25.15, 9.23, 1.84, 0.56),
    (5.33, 4.11, 13.11, 8.84, 3.83, 1.15),
    (1.34, 2.22, 2.83, 2.29, 2.24, 0.68),
];

fn t_test_reproduction() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for (rows, d_tol) in [(&FLIGHT_ROWS, 0.02), (&DWELL_ROWS, 0.03)] {
        for &(nm, ns, em, es, t, d) in rows.iter() {
            let r = t_test(&GroupSummary::new(23, nm, ns).unwrap(), &GroupSummary::new(23, em, es).unwrap());
            let (dt, dd) = ((r.t.abs() - t).abs(), (r.cohen_d.abs() - d).abs());
            check(dt <= 0.02, format!("t {:.4} vs {t}", r.t))?;
            check(dd <= d_tol, format!("d {:.4} vs {d}", r.cohen_d))?;
            check(r.df == 44.0, format!("df {}", r.df))?;
            worst = (worst.0.max(dt), worst.1.max(dd));
        }
    }
    Ok(format!("8 rows, max |dt| {:.4}, max |dd| {:.4}", worst.0, worst.1))
}

// 3. Pairwise-count AUC against trapezoidal ROC area.

fn auc_dual_route() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut tied = 0;
    for set in 0..100 {
        let n = rng.random_range(2..=50);
        let mut labels: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
        labels[0] = 1;
        labels[1] = 0;
        // Every other set draws from a handful of values to force ties.
        let scores: Vec<f64> = if set % 2 == 0 {
            (0..n).map(|_| rng.random::<f64>()).collect()
        } else {
            (0..n).map(|_| rng.random_range(0..4) as f64 * 0.25).collect()
        };
        let mut sorted = scores.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            tied += 1;
        }
        let a = pairwise_auc(&labels, &scores).map_err(|e| e.to_string())?;
        let b = roc_curve(&labels, &scores).map_err(|e| e.to_string())?.area();
        check(a == b, format!("set {set}: pairwise {a} vs trapezoid {b}"))?;
    }
    check(tied >= 50, format!("only {tied} sets had ties"))?;
    Ok(format!("100 sets equal, {tied} with tied scores"))
}

// 4. Mutual information against entropy arithmetic.

fn entropy_nats(counts: impl IntoIterator<Item = usize>) -> f64 {
    let counts: Vec<usize> = counts.into_iter().collect();
    let n: usize = counts.iter().sum();
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.ln()
        })
        .sum()
}

fn mic_oracle() -> Outcome {
    let mut tables = 0usize;
    let mut worst = 0.0f64;
    for kx in 1..=5usize {
        for ky in 1..=2usize {
            let cells = kx * ky;
            // Every table with cell counts 0..=2.
            for code in 0..3usize.pow(cells as u32) {
                let mut counts = vec![0usize; cells];
                let mut c = code;
                for slot in counts.iter_mut() {
                    *slot = c % 3;
                    c /= 3;
                }
                if counts.iter().sum::<usize>() == 0 {
                    continue;
                }
                let (mut xs, mut ys) = (Vec::new(), Vec::new());
                for x in 0..kx {
                    for y in 0..ky {
                        for _ in 0..counts[x * ky + y] {
                            xs.push(x);
                            ys.push(y);
                        }
                    }
                }
                let hx = entropy_nats((0..kx).map(|x| (0..ky).map(|y| counts[x * ky + y]).sum()));
                let hy = entropy_nats((0..ky).map(|y| (0..kx).map(|x| counts[x * ky + y]).sum()));
                let hxy = entropy_nats(counts.iter().copied());
                let want = hx + hy - hxy;
                let got = mutual_information(&xs, &ys);
                let err = (got - want).abs();
                worst = worst.max(err);
                check(err <= 1e-9, format!("table {counts:?} ({kx}x{ky}): {got} vs {want}"))?;
                tables += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let n = rng.random_range(1..40);
        let xs: Vec<usize> = (0..n).map(|_| rng.random_range(0..5)).collect();
        let mut counts = [0usize; 5];
        xs.iter().for_each(|&x| counts[x] += 1);
        let hx = entropy_nats(counts);
        check((mutual_information(&xs, &xs) - hx).abs() <= 1e-9, "MI(X,X) != H(X)")?;
        check(mutual_information(&xs, &vec![0; n]).abs() <= 1e-12, "MI with constant != 0")?;
    }
    // Binned route: the score of a column is MI of its bins with the labels.
    for _ in 0..20 {
        let n = rng.random_range(10..60);
        let col: Vec<f64> = (0..n).map(|_| rng.random_range(0..8) as f64).collect();
        let labels: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
        let bins = equal_frequency_bins(&col, 5);
        let mut joint = [0usize; 10];
        bins.iter().zip(&labels).for_each(|(&b, &l)| joint[b * 2 + l as usize] += 1);
        let hx = entropy_nats((0..5).map(|b| joint[2 * b] + joint[2 * b + 1]));
        let hy = entropy_nats([0, 1].map(|l| (0..5).map(|b| joint[2 * b + l]).sum()));
        let want = hx + hy - entropy_nats(joint.iter().copied());
        let got = mic_scores(&[col], &labels, 5)[0];
        check((got - want).abs() <= 1e-9, format!("binned score {got} vs {want}"))?;
    }
    Ok(format!("{tables} joint tables, max error {worst:.1e}"))
}

// 5. SMO against brute-force search over the dual.

fn dual(alpha: &[f64], y: &[f64], k: &[f64]) -> f64 {
    let n = alpha.len();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * k[i * n + j];
        }
    }
    alpha.iter().sum::<f64>() - 0.5 * quad
}

/// Grid search over the first three duals; the fourth follows from the
/// equality constraint. Each pass refines the grid around the best point.
fn grid_best(y: &[f64], k: &[f64], c: f64) -> f64 {
    let mut center = [c / 2.0; 3];
    let mut half = c / 2.0;
    let mut best = f64::NEG_INFINITY;
    for _ in 0..4 {
        let steps = 40;
        let h = 2.0 * half / steps as f64;
        let mut next = center;
        for i in 0..=steps {
            let a0 = center[0] - half + i as f64 * h;
            if !(0.0..=c).contains(&a0) {
                continue;
            }
            for j in 0..=steps {
                let a1 = center[1] - half + j as f64 * h;
                if !(0.0..=c).contains(&a1) {
                    continue;
                }
                for l in 0..=steps {
                    let a2 = center[2] - half + l as f64 * h;
                    if !(0.0..=c).contains(&a2) {
                        continue;
                    }
                    let a3 = -y[3] * (y[0] * a0 + y[1] * a1 + y[2] * a2);
                    if !(0.0..=c).contains(&a3) {
                        continue;
                    }
                    let v = dual(&[a0, a1, a2, a3], y, k);
                    if v > best {
                        best = v;
                        next = [a0, a1, a2];
                    }
                }
            }
        }
        center = next;
        half = 4.0 * 2.0 * half / steps as f64;
    }
    best
}

fn svm_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = 1.0;
    let (mut worst_gap, mut worst_kkt) = (0.0f64, 0.0f64);
    for set in 0..10 {
        let x: Vec<[f64; 2]> = (0..4).map(|_| [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]).collect();
        let y = if set % 2 == 0 { [1.0, -1.0, 1.0, -1.0] } else { [1.0, 1.0, -1.0, -1.0] };
        let mut k = vec![0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                k[i * 4 + j] = x[i][0] * x[j][0] + x[i][1] * x[j][1];
            }
        }
        let sol = smo_solve(&k, &y, c, 1e-3, 100_000).map_err(|e| e.to_string())?;
        let smo = dual(&sol.alpha, &y, &k);
        let grid = grid_best(&y, &k, c);
        let gap = (smo - grid).abs();
        worst_gap = worst_gap.max(gap);
        check(gap <= 1e-3, format!("set {set}: SMO {smo} vs grid {grid}"))?;
        // KKT: box, equality, and margin conditions by alpha state.
        let eq: f64 = sol.alpha.iter().zip(&y).map(|(a, y)| a * y).sum();
        let mut kkt = eq.abs();
        for i in 0..4 {
            let a = sol.alpha[i];
            check((-1e-12..=c + 1e-12).contains(&a), format!("alpha {a} outside box"))?;
            let f: f64 = (0..4).map(|j| sol.alpha[j] * y[j] * k[i * 4 + j]).sum::<f64>() + sol.bias;
            let margin = y[i] * f;
            let r = if a <= 1e-8 {
                (1.0 - margin).max(0.0)
            } else if a >= c - 1e-8 {
                (margin - 1.0).max(0.0)
            } else {
                (margin - 1.0).abs()
            };
            kkt = kkt.max(r);
        }
        worst_kkt = worst_kkt.max(kkt);
        check(kkt <= 1e-3, format!("set {set}: KKT residual {kkt}"))?;
    }
    // Separable blobs.
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..40 {
        let shift = if i % 2 == 0 { 3.0 } else { -3.0 };
        rows.push(vec![shift + rng.random_range(-1.0..1.0), shift + rng.random_range(-1.0..1.0)]);
        labels.push((i % 2 == 0) as u8);
    }
    for kernel in [KernelChoice::Linear, KernelChoice::RbfScale] {
        let model = train_svm(&rows, &labels, SvmParams { kernel, ..SvmParams::default() }).map_err(|e| e.to_string())?;
        let correct = rows.iter().zip(&labels).filter(|(r, &l)| (model.score(r) > 0.0) as u8 == l).count();
        check(correct == rows.len(), format!("{kernel:?}: {correct}/40 correct"))?;
    }
    Ok(format!("10 toy sets, max dual gap {worst_gap:.1e}, max KKT residual {worst_kkt:.1e}, separable set 40/40"))
}

// 6. Logistic regression gradient against central differences.

fn lr_gradient() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = rng.random_range(2..=30);
        let d = rng.random_range(1..=10);
        let c = [0.1, 1.0, 10.0][rng.random_range(0..3)];
        let x: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
        let y: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
        let p: Vec<f64> = (0..=d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let g = logreg::gradient(&p, &x, &y, c);
        let mut fd = vec![0.0; p.len()];
        for k in 0..p.len() {
            let h = 1e-5 * p[k].abs().max(1.0);
            let (mut hi, mut lo) = (p.clone(), p.clone());
            hi[k] += h;
            lo[k] -= h;
            fd[k] = (logreg::objective(&hi, &x, &y, c) - logreg::objective(&lo, &x, &y, c)) / (2.0 * h);
        }
        let diff = g.iter().zip(&fd).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let norm = g.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-12);
        let rel = diff / norm;
        worst = worst.max(rel);
        check(rel < 1e-5, format!("n {n} d {d}: relative error {rel:e}"))?;
    }
    Ok(format!("20 instances, max relative error {worst:.1e}"))
}

// 7. I-VT on constructed traces.

fn gaze_at(t: f64, yaw_deg: f64) -> GazeSample {
    let r = yaw_deg.to_radians();
    GazeSample {
        timestamp: t,
        gaze_origin_left: [-32.0, 0.0, 0.0],
        gaze_origin_right: [32.0, 0.0, 0.0],
        gaze_dir_left: [r.sin(), 0.0, r.cos()],
        gaze_dir_right: [r.sin(), 0.0, r.cos()],
        eye_open_left: 1.0,
        eye_open_right: 1.0,
        pupil_pos_left: [0.0, 0.0],
        pupil_pos_right: [0.0, 0.0],
        aoi: None,
    }
}

fn ivt_traces() -> Outcome {
    let t = |k: usize| k as f64 / 100.0;
    let params = FixationParams::default();

    let still: Vec<_> = (0..=30).map(|k| gaze_at(t(k), 0.0)).collect();
    let f = detect_fixations(&still, params).fixations;
    check(f.len() == 1 && f[0].duration == t(30), format!("constant: {f:?}"))?;

    // 0..=30 at 0 deg, 31..=61 at 5 deg; the 5 deg step takes 10 ms.
    let jump: Vec<_> = (0..=61).map(|k| gaze_at(t(k), if k <= 30 { 0.0 } else { 5.0 })).collect();
    let f = detect_fixations(&jump, params).fixations;
    check(f.len() == 2, format!("jump: {} fixations", f.len()))?;
    check(f[0].start == t(0) && f[0].end == t(30) && f[0].duration == t(30) - t(0), format!("jump first: {:?}", f[0]))?;
    check(f[1].start == t(31) && f[1].end == t(61) && f[1].duration == t(61) - t(31), format!("jump second: {:?}", f[1]))?;
    check((f[0].duration - 0.3).abs() < 1e-12 && (f[1].duration - 0.3).abs() < 1e-12, "jump durations not 300 ms")?;

    // 10 deg/s for one second.
    let sweep: Vec<_> = (0..=100).map(|k| gaze_at(t(k), 10.0 * t(k))).collect();
    let f = detect_fixations(&sweep, params).fixations;
    check(f.len() == 1 && f[0].duration == t(100), format!("sweep: {f:?}"))?;
    Ok("constant 1 x 300 ms, jump 2 x 300 ms, sweep 1 x 1000 ms".into())
}

// 8. Selection sizes.

fn selection_sizes() -> Outcome {
    let a = top_k(70, 0.10).map_err(|e| e.to_string())?;
    let b = top_k(65, 0.65).map_err(|e| e.to_string())?;
    check(a == 7 && b == 42, format!("(70, 10%) -> {a}, (65, 65%) -> {b}"))?;
    Ok("(70, 10%) -> 7, (65, 65%) -> 42".into())
}

// 9 and 10. Seeded end-to-end runs.

fn reproduce(out: &Path, jobs: usize) -> Result<Duration, String> {
    let start = Instant::now();
    let code = skyselect::cli::run_args([
        "reproduce",
        "--seed",
        "7",
        "--jobs",
        &jobs.to_string(),
        "--out",
        out.to_str().unwrap(),
    ]);
    check(code == 0, format!("reproduce exited with {code}"))?;
    Ok(start.elapsed())
}

fn read_table(path: &Path) -> Result<Vec<BTreeMap<String, String>>, String> {
    let mut r = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
    let header = r.headers().map_err(|e| e.to_string())?.clone();
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            Ok(header.iter().zip(rec.iter()).map(|(h, v)| (h.to_string(), v.to_string())).collect())
        })
        .collect()
}

fn num(row: &BTreeMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap()
}

/// Expected (novice, expert) mean and SD for each headline indicator;
/// dwell rows are in percent.
const INDICATOR_TARGETS: [(&str, (f64, f64), (f64, f64)); 8] = [
    ("total_flight_time", (902.32, 336.73), (759.06, 163.58)),
    ("pitch_1s", (-12.54, 29.03), (3.97, 24.43)),
    ("dist_err_mean", (873.89, 818.43), (176.67, 205.52)),
    ("dist_err_sd", (675.78, 589.07), (211.52, 225.76)),
    ("airspeed_dwell", (5.32, 4.98), (8.56, 5.45)),
    ("attitude_dwell", (31.03, 12.2), (25.15, 9.23)),
    ("vsi_dwell", (5.33, 4.11), (13.11, 8.84)),
    ("altitude_dwell", (1.34, 2.22), (2.83, 2.29)),
];

const CALIBRATION_N: usize = 200;

fn indicators(profile: &ClassProfile, prefix: &str, root: u64) -> Vec<[f64; 8]> {
    let draws = stratified_draws(CALIBRATION_N, seed::derive(root, prefix));
    draws
        .par_iter()
        .enumerate()
        .map(|(i, d)| {
            let id = format!("{prefix}{:03}", i + 1);
            let (rec, _) = generate_participant_from(profile, &id, d, seed::derive(root, &id), 120.0, 30.0);
            let q = extract_qar_features(&rec.flight).unwrap();
            let a = extract_aoi_features(&rec.gaze).unwrap();
            [
                q.total_flight_time,
                q.pitch_1s,
                q.dist_err_mean,
                q.dist_err_sd,
                100.0 * a.dwell(AoiName::AirspeedIndicator),
                100.0 * a.dwell(AoiName::AttitudeIndicator),
                100.0 * a.dwell(AoiName::VerticalSpeedIndicator),
                100.0 * a.dwell(AoiName::AltitudeIndicator),
            ]
        })
        .collect()
}

/// Largest |mean - target| / SE over the 16 class/indicator pairs, with
/// SE = target SD / sqrt(n).
fn calibration() -> Result<f64, String> {
    let (expert, novice) = default_profiles();
    let root = seed::derive(7, "calibration");
    let mut worst = 0.0f64;
    for (profile, prefix, pick) in [(&novice, "N", 0usize), (&expert, "E", 1)] {
        let rows = indicators(profile, prefix, root);
        for (k, (name, nov, exp)) in INDICATOR_TARGETS.iter().enumerate() {
            let (mean_t, sd_t) = if pick == 0 { *nov } else { *exp };
            let mean = rows.iter().map(|r| r[k]).sum::<f64>() / rows.len() as f64;
            let z = (mean - mean_t).abs() / (sd_t / (CALIBRATION_N as f64).sqrt());
            check(z <= 2.0, format!("{prefix} {name}: mean {mean:.3} vs {mean_t} ({z:.2} SE)"))?;
            worst = worst.max(z);
        }
    }
    Ok(worst)
}

fn end_to_end(dir: &Path) -> Outcome {
    let elapsed = reproduce(dir, 1)?;
    check(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    let grid = read_table(&dir.join("grid.csv"))?;
    check(grid.len() == 15, format!("grid has {} rows", grid.len()))?;
    let pairs: std::collections::BTreeSet<_> = grid.iter().map(|r| (r["selector"].clone(), r["model"].clone())).collect();
    check(pairs.len() == 15, "grid pairs are not distinct")?;
    let cell = grid
        .iter()
        .find(|r| r["selector"] == "mic" && r["model"] == "svm" && r["combo"] == "aoi_em_qar")
        .ok_or("no SVM+MIC cell")?;
    let (acc, auc) = (num(cell, "acc"), num(cell, "auc"));
    check(acc >= 0.85 && auc >= 0.90, format!("SVM+MIC acc {acc} auc {auc}"))?;
    let ablation = read_table(&dir.join("ablation.csv"))?;
    let combo_acc = |name: &str| ablation.iter().find(|r| r["combo"] == name).map(|r| num(r, "acc"));
    let (aoi, all) = (combo_acc("aoi").ok_or("no aoi row")?, combo_acc("aoi_em_qar").ok_or("no full row")?);
    check(all >= aoi + 0.05, format!("ablation: all {all} vs aoi {aoi}"))?;
    let start = Instant::now();
    let worst_se = calibration()?;
    Ok(format!(
        "reproduce {:.0}s: SVM+MIC acc {acc:.4} auc {auc:.4}; ablation {aoi:.4} -> {all:.4}; 15 grid cells; \
         calibration n={CALIBRATION_N}/class within {worst_se:.2} SE ({:.0}s)",
        elapsed.as_secs_f64(),
        start.elapsed().as_secs_f64()
    ))
}

/// Relative path -> SHA-256 of every file under `dir`.
fn digest_tree(dir: &Path) -> BTreeMap<String, String> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<String, String>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                let bytes = std::fs::read(&path).unwrap();
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, hex::encode(Sha256::digest(&bytes)));
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

fn first_difference(a: &BTreeMap<String, String>, b: &BTreeMap<String, String>) -> Option<String> {
    if a.len() != b.len() {
        return Some(format!("{} vs {} files", a.len(), b.len()));
    }
    a.iter().find(|(k, v)| b.get(*k) != Some(v)).map(|(k, _)| k.clone())
}

fn determinism(serial: BTreeMap<String, String>) -> Outcome {
    let mut digests = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        reproduce(dir.path(), 8)?;
        digests.push(digest_tree(dir.path()));
    }
    if let Some(d) = first_difference(&digests[0], &digests[1]) {
        return Err(format!("repeated --jobs 8 runs differ at {d}"));
    }
    if let Some(d) = first_difference(&serial, &digests[0]) {
        return Err(format!("--jobs 1 and --jobs 8 differ at {d}"));
    }
    Ok(format!("{} files identical across two --jobs 8 runs and one --jobs 1 run", serial.len()))
}

fn report(id: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut outcome = f();
    let elapsed = start.elapsed();
    if let (Ok(msg), Some(limit)) = (&outcome, limit) {
        if elapsed > limit {
            outcome = Err(format!("{msg}; took {elapsed:?}, limit {limit:?}"));
        }
    }
    let (tag, msg) = match &outcome {
        Ok(m) => ("PASS", m),
        Err(m) => ("FAIL", m),
    };
    println!("{tag} {id:>2} {name} [{:.2}s]: {msg}", elapsed.as_secs_f64());
    outcome.is_ok()
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let mut ok = true;
    ok &= report(1, "metric arithmetic", secs(1), metric_arithmetic);
    ok &= report(2, "t-test reproduction", secs(1), t_test_reproduction);
    ok &= report(3, "AUC dual route", secs(1), auc_dual_route);
    ok &= report(4, "MI entropy oracle", secs(1), mic_oracle);
    ok &= report(5, "SMO oracle", secs(10), svm_oracle);
    ok &= report(6, "LR gradient check", secs(5), lr_gradient);
    ok &= report(7, "I-VT exactness", secs(1), ivt_traces);
    ok &= report(8, "selection sizes", secs(1), selection_sizes);

    let serial_dir = tempfile::tempdir().expect("tempdir");
    let mut serial = None;
    ok &= report(9, "seeded end-to-end run", None, || {
        let r = end_to_end(serial_dir.path());
        serial = Some(digest_tree(serial_dir.path()));
        r
    });
    drop(serial_dir);
    ok &= report(10, "determinism", None, || match serial {
        Some(s) if !s.is_empty() => determinism(s),
        _ => Err("no serial run to compare".into()),
    });
    if !ok {
        std::process::exit(1);
    }
}
