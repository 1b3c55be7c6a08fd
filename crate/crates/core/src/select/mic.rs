//! Mutual information between a binned feature and the class label.

/// Equal-frequency bin index per value. Columns with at most `bins`
/// distinct values get one bin per value; otherwise a value's bin is
/// `floor(bins * r / n)` with `r` the number of strictly smaller values, so
/// ties always share a bin and only the ranks matter.
pub fn equal_frequency_bins(values: &[f64], bins: usize) -> Vec<usize> {
    let n = values.len();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut distinct = sorted.clone();
    distinct.dedup();
    if distinct.len() <= bins {
        return values
            .iter()
            .map(|v| distinct.partition_point(|d| d.total_cmp(v).is_lt()))
            .collect();
    }
    values
        .iter()
        .map(|v| {
            let r = sorted.partition_point(|s| s.total_cmp(v).is_lt());
            bins * r / n
        })
        .collect()
}

/// Shannon entropy in nats of a count vector.
pub fn entropy(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Plug-in mutual information (nats) of two discrete sequences:
/// `sum p(a,b) ln(p(a,b) / (p(a) p(b)))`.
pub fn mutual_information(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let ka = a.iter().max().map_or(0, |m| m + 1);
    let kb = b.iter().max().map_or(0, |m| m + 1);
    let mut joint = vec![0usize; ka * kb];
    let mut ca = vec![0usize; ka];
    let mut cb = vec![0usize; kb];
    for (&x, &y) in a.iter().zip(b) {
        joint[x * kb + y] += 1;
        ca[x] += 1;
        cb[y] += 1;
    }
    let nf = n as f64;
    let mut mi = 0.0;
    for x in 0..ka {
        for y in 0..kb {
            let c = joint[x * kb + y];
            if c == 0 {
                continue;
            }
            let pxy = c as f64 / nf;
            let px = ca[x] as f64 / nf;
            let py = cb[y] as f64 / nf;
            mi += pxy * (pxy / (px * py)).ln();
        }
    }
    mi.max(0.0)
}

/// MI between each column (binned) and the labels.
pub fn mic_scores(columns: &[Vec<f64>], labels: &[u8], bins: usize) -> Vec<f64> {
    let y: Vec<usize> = labels.iter().map(|&l| l as usize).collect();
    columns
        .iter()
        .map(|c| mutual_information(&equal_frequency_bins(c, bins), &y))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_copy_gives_ln2() {
        let y = [0, 1, 0, 1, 1, 0];
        assert!((mutual_information(&y, &y) - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn bins_are_balanced_and_rank_based() {
        let v: Vec<f64> = (0..10).map(|i| (i as f64).powi(3)).collect();
        assert_eq!(equal_frequency_bins(&v, 5), vec![0, 0, 1, 1, 2, 2, 3, 3, 4, 4]);
        let few = [3.0, 1.0, 3.0, 2.0];
        assert_eq!(equal_frequency_bins(&few, 5), vec![2, 0, 2, 1]);
    }

    #[test]
    fn constant_feature_has_zero_mi() {
        let s = mic_scores(&[vec![4.0; 6]], &[0, 1, 0, 1, 0, 1], 5);
        assert_eq!(s, vec![0.0]);
    }
}
