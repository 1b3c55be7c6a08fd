use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::flight::{parse_flight_file, FlightSample};
use super::gaze::{parse_gaze_file, GazeSample};
use super::{csv_reader, ColumnMap, IngestError, Label};

const MANIFEST_COLUMNS: [&str; 4] = ["participant_id", "label", "gaze_path", "flight_path"];

/// Both log streams of one participant plus the class label.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticipantRecord {
    pub participant_id: String,
    pub label: Label,
    pub gaze: Vec<GazeSample>,
    pub flight: Vec<FlightSample>,
}

impl ParticipantRecord {
    pub fn new(
        participant_id: impl Into<String>,
        label: Label,
        gaze: Vec<GazeSample>,
        flight: Vec<FlightSample>,
    ) -> Result<Self, IngestError> {
        if gaze.is_empty() || flight.is_empty() {
            return Err(IngestError::Empty);
        }
        Ok(ParticipantRecord {
            participant_id: participant_id.into(),
            label,
            gaze,
            flight,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct Cohort {
    pub participants: Vec<ParticipantRecord>,
}

impl Cohort {
    pub fn len(&self) -> usize {
        self.participants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.participants.is_empty()
    }

    /// (experts, novices)
    pub fn class_counts(&self) -> (usize, usize) {
        let experts = self
            .participants
            .iter()
            .filter(|p| p.label == Label::Expert)
            .count();
        (experts, self.participants.len() - experts)
    }
}

/// One manifest line; log paths are relative to the manifest's directory
/// unless absolute.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifestRow {
    pub participant_id: String,
    pub label: Label,
    pub gaze_path: PathBuf,
    pub flight_path: PathBuf,
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>, IngestError> {
    let file = std::fs::File::open(path).map_err(|source| match source.kind() {
        std::io::ErrorKind::NotFound => IngestError::MissingFile { path: path.into() },
        _ => IngestError::Io {
            path: path.into(),
            source,
        },
    })?;
    let mut reader = csv_reader(file);
    let headers = reader
        .headers()
        .map_err(|source| IngestError::Record { row: 0, source })?
        .clone();
    let cols = ColumnMap::resolve(&headers, &MANIFEST_COLUMNS).map_err(|e| e.in_file(path))?;
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|source| IngestError::Record { row, source }.in_file(path))?;
        let id = cols.text(&rec, 0).to_string();
        if !seen.insert(id.clone()) {
            return Err(IngestError::DuplicateId { row, id }.in_file(path));
        }
        let raw_label = cols.text(&rec, 1);
        let label = match raw_label {
            "0" => Label::Novice,
            "1" => Label::Expert,
            _ => {
                return Err(IngestError::BadLabel {
                    row,
                    value: raw_label.to_string(),
                }
                .in_file(path))
            }
        };
        rows.push(ManifestRow {
            participant_id: id,
            label,
            gaze_path: cols.text(&rec, 2).into(),
            flight_path: cols.text(&rec, 3).into(),
        });
    }
    Ok(rows)
}

/// Load every participant listed in a manifest CSV
/// (`participant_id,label,gaze_path,flight_path`). Participants are parsed
/// in parallel; the cohort keeps manifest order.
pub fn load_cohort(manifest: impl AsRef<Path>) -> Result<Cohort, IngestError> {
    let manifest = manifest.as_ref();
    let base = manifest.parent().unwrap_or(Path::new("."));
    let rows = read_manifest(manifest)?;
    let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
    for row in &rows {
        for p in [&row.gaze_path, &row.flight_path] {
            let full = resolve(p);
            if !full.is_file() {
                return Err(IngestError::MissingFile { path: full });
            }
        }
    }
    let participants = rows
        .par_iter()
        .map(|row| {
            let gaze = parse_gaze_file(resolve(&row.gaze_path))?;
            let flight = parse_flight_file(resolve(&row.flight_path))?;
            ParticipantRecord::new(row.participant_id.clone(), row.label, gaze, flight)
                .map_err(|e| e.in_file(resolve(&row.gaze_path)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cohort { participants })
}

pub fn write_manifest<W: Write>(rows: &[ManifestRow], out: W) -> std::io::Result<()> {
    let mut w = std::io::BufWriter::new(out);
    writeln!(w, "{}", MANIFEST_COLUMNS.join(","))?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            r.participant_id,
            r.label.as_u8(),
            r.gaze_path.display(),
            r.flight_path.display()
        )?;
    }
    w.flush()
}
