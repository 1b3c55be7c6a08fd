//! The labeled feature table passed between extraction, selection and
//! evaluation, plus its CSV form.

use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::Path;

use crate::features::{DatasetCombo, FeatureRegistry};
use crate::numfmt::sig9;
use crate::telemetry::IngestError;
use crate::{Error, Result};

/// Rows are participants, columns are named features. Missing values are
/// NaN until [`FeatureMatrix::impute`] fills them.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    ids: Vec<String>,
    names: Vec<String>,
    rows: Vec<Vec<f64>>,
    labels: Vec<u8>,
}

impl FeatureMatrix {
    pub fn new(ids: Vec<String>, names: Vec<String>, rows: Vec<Vec<f64>>, labels: Vec<u8>) -> Result<Self> {
        if ids.len() != rows.len() || labels.len() != rows.len() {
            return Err(Error::Matrix(format!(
                "{} ids, {} rows, {} labels",
                ids.len(),
                rows.len(),
                labels.len()
            )));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != names.len()) {
            return Err(Error::Matrix(format!(
                "row {} (`{}`) has {} values, expected {}",
                i + 1,
                ids[i],
                r.len(),
                names.len()
            )));
        }
        if let Some(i) = labels.iter().position(|&l| l > 1) {
            return Err(Error::Matrix(format!("row {}: label {} is not 0 or 1", i + 1, labels[i])));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Matrix(format!("duplicate column `{dup}`")));
        }
        Ok(FeatureMatrix { ids, names, rows, labels })
    }

    /// Unnamed participants (`p1`, `p2`, ...) and features (`f1`, ...).
    pub fn from_rows(rows: Vec<Vec<f64>>, labels: Vec<u8>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        let ids = (1..=rows.len()).map(|i| format!("p{i}")).collect();
        let names = (1..=d).map(|j| format!("f{j}")).collect();
        Self::new(ids, names, rows, labels)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.names.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// (experts, novices).
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&l| l == 1).count();
        (pos, self.labels.len() - pos)
    }

    pub fn has_both_classes(&self) -> bool {
        let (p, n) = self.class_counts();
        p > 0 && n > 0
    }

    pub fn select_columns(&self, cols: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            ids: self.ids.clone(),
            names: cols.iter().map(|&j| self.names[j].clone()).collect(),
            rows: self.rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            ids: rows.iter().map(|&i| self.ids[i].clone()).collect(),
            names: self.names.clone(),
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: rows.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Every row except `held_out`.
    pub fn without_row(&self, held_out: usize) -> FeatureMatrix {
        let keep: Vec<usize> = (0..self.n_rows()).filter(|&i| i != held_out).collect();
        self.select_rows(&keep)
    }

    pub fn select_names<S: AsRef<str>>(&self, names: &[S]) -> Result<FeatureMatrix> {
        let cols = names
            .iter()
            .map(|n| {
                self.column_index(n.as_ref())
                    .ok_or_else(|| Error::Config(format!("unknown feature `{}`", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.select_columns(&cols))
    }

    /// Columns of `combo`, in registry order.
    pub fn for_combo(&self, registry: &FeatureRegistry, combo: DatasetCombo) -> Result<FeatureMatrix> {
        self.select_names(&registry.names_for(combo))
    }

    pub fn has_missing(&self) -> bool {
        self.rows.iter().flatten().any(|v| v.is_nan())
    }

    /// Per-column mean over non-NaN entries; 0 for an all-missing column.
    pub fn column_means(&self) -> Vec<f64> {
        (0..self.n_cols())
            .map(|j| {
                let (n, s) = self
                    .rows
                    .iter()
                    .map(|r| r[j])
                    .filter(|v| !v.is_nan())
                    .fold((0usize, 0.0), |(n, s), v| (n + 1, s + v));
                if n == 0 {
                    0.0
                } else {
                    s / n as f64
                }
            })
            .collect()
    }

    /// Replaces NaN cells with the given per-column values.
    pub fn impute(&self, fill: &[f64]) -> FeatureMatrix {
        let mut out = self.clone();
        for r in out.rows.iter_mut() {
            for (v, f) in r.iter_mut().zip(fill) {
                if v.is_nan() {
                    *v = *f;
                }
            }
        }
        out
    }

    /// Same table with 0 and 1 exchanged.
    pub fn with_flipped_labels(&self) -> FeatureMatrix {
        let mut out = self.clone();
        out.labels.iter_mut().for_each(|l| *l = 1 - *l);
        out
    }

    /// Header `participant_id,label,<names>`; 9 significant digits; missing
    /// cells empty.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["participant_id".to_string(), "label".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        for ((id, label), row) in self.ids.iter().zip(&self.labels).zip(&self.rows) {
            let mut rec = vec![id.clone(), label.to_string()];
            rec.extend(row.iter().map(|&v| if v.is_nan() { String::new() } else { sig9(v) }));
            w.write_record(&rec)?;
        }
        w.flush()
    }

    pub fn write_csv_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv<R: Read>(input: R) -> Result<FeatureMatrix> {
        let mut reader = crate::telemetry::csv_reader(input);
        let headers = reader
            .headers()
            .map_err(|source| IngestError::Record { row: 0, source })?
            .clone();
        let cols: Vec<String> = headers.iter().map(|h| h.trim().to_string()).collect();
        if cols.len() < 2 || cols[0] != "participant_id" || cols[1] != "label" {
            return Err(IngestError::MissingColumn {
                column: "participant_id,label".to_string(),
            }
            .into());
        }
        let names = cols[2..].to_vec();
        let (mut ids, mut rows, mut labels) = (Vec::new(), Vec::new(), Vec::new());
        for (k, rec) in reader.records().enumerate() {
            let row = k + 1;
            let rec = rec.map_err(|source| IngestError::Record { row, source })?;
            ids.push(rec[0].trim().to_string());
            let label = rec[1].trim();
            labels.push(match label {
                "0" => 0,
                "1" => 1,
                _ => {
                    return Err(IngestError::BadLabel {
                        row,
                        value: label.to_string(),
                    }
                    .into())
                }
            });
            let values = rec
                .iter()
                .skip(2)
                .zip(&names)
                .map(|(cell, name)| {
                    let cell = cell.trim();
                    if cell.is_empty() {
                        return Ok(f64::NAN);
                    }
                    cell.parse::<f64>().map_err(|_| IngestError::Cell {
                        row,
                        column: name.clone(),
                        value: cell.to_string(),
                    })
                })
                .collect::<Result<Vec<f64>, IngestError>>()?;
            rows.push(values);
        }
        FeatureMatrix::new(ids, names, rows, labels)
    }

    pub fn read_csv_file(path: impl AsRef<Path>) -> Result<FeatureMatrix> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(std::io::BufReader::new(file)).map_err(|e| match e {
            Error::Ingest(inner) => Error::Ingest(inner.in_file(path)),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> FeatureMatrix {
        FeatureMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec!["x".into(), "y".into()],
            vec![vec![1.0, f64::NAN], vec![2.0, 4.0], vec![3.0, 8.0]],
            vec![1, 0, 1],
        )
        .unwrap()
    }

    #[test]
    fn impute_uses_observed_mean() {
        let m = toy();
        assert!(m.has_missing());
        let means = m.column_means();
        assert_eq!(means, vec![2.0, 6.0]);
        let f = m.impute(&means);
        assert!(!f.has_missing());
        assert_eq!(f.row(0), &[1.0, 6.0]);
    }

    #[test]
    fn csv_round_trip() {
        let m = toy();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("participant_id,label,x,y\na,1,1,\n"));
        let back = FeatureMatrix::read_csv(&buf[..]).unwrap();
        assert_eq!(back.ids(), m.ids());
        assert!(back.row(0)[1].is_nan());
        assert_eq!(back.row(2), m.row(2));
    }

    #[test]
    fn shape_errors() {
        assert!(FeatureMatrix::from_rows(vec![vec![1.0], vec![1.0, 2.0]], vec![0, 1]).is_err());
        assert!(FeatureMatrix::from_rows(vec![vec![1.0]], vec![2]).is_err());
        assert!(FeatureMatrix::from_rows(vec![vec![1.0]], vec![0, 1]).is_err());
    }

    #[test]
    fn subsetting() {
        let m = toy();
        let s = m.select_names(&["y"]).unwrap();
        assert_eq!(s.n_cols(), 1);
        assert_eq!(m.without_row(1).ids(), &["a".to_string(), "c".to_string()]);
        assert!(m.select_names(&["zzz"]).is_err());
        assert_eq!(m.with_flipped_labels().labels(), &[0, 1, 0]);
    }
}
