//! Raw log ingestion: gaze logs, flight logs and cohort manifests.
//!
//! All three are comma-separated text with a mandatory header row. Column
//! order is free; column names are fixed. Parsing is total: a file either
//! yields its samples in order or a located error (column, row, cell).

mod aoi;
mod cohort;
mod flight;
mod gaze;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use aoi::{format_aoi_cell, parse_aoi_cell, AoiName};
pub use cohort::{load_cohort, write_manifest, Cohort, ManifestRow, ParticipantRecord};
pub use flight::{
    parse_flight_file, parse_flight_log, write_flight_log, FlightSample, FLIGHT_COLUMNS,
    AGL_NOISE_FLOOR,
};
pub use gaze::{parse_gaze_file, parse_gaze_log, write_gaze_log, GazeSample, GAZE_COLUMNS};

/// Class label: 1 = expert pilot, 0 = novice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Novice = 0,
    Expert = 1,
}

impl Label {
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn from_u8(v: u8) -> Option<Label> {
        match v {
            0 => Some(Label::Novice),
            1 => Some(Label::Expert),
            _ => None,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Novice => Label::Expert,
            Label::Expert => Label::Novice,
        }
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("missing required column `{column}`")]
    MissingColumn { column: String },
    #[error("row {row}, column `{column}`: cannot parse `{value}`")]
    Cell {
        row: usize,
        column: String,
        value: String,
    },
    #[error("row {row}: {message}")]
    Validation { row: usize, message: String },
    #[error("row {row}: malformed record: {source}")]
    Record {
        row: usize,
        #[source]
        source: csv::Error,
    },
    #[error("stream is empty")]
    Empty,
    #[error("manifest row {row}: duplicate participant id `{id}`")]
    DuplicateId { row: usize, id: String },
    #[error("manifest row {row}: label `{value}` is not 0 or 1")]
    BadLabel { row: usize, value: String },
    #[error("{path}: file not found")]
    MissingFile { path: PathBuf },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<IngestError>,
    },
}

impl IngestError {
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        IngestError::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

/// Header lookup shared by the CSV parsers.
pub(crate) struct ColumnMap {
    indices: Vec<usize>,
}

impl ColumnMap {
    pub(crate) fn resolve(
        headers: &csv::StringRecord,
        required: &[&str],
    ) -> Result<Self, IngestError> {
        let indices = required
            .iter()
            .map(|&name| {
                headers
                    .iter()
                    .position(|h| h.trim() == name)
                    .ok_or_else(|| IngestError::MissingColumn {
                        column: name.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ColumnMap { indices })
    }

    pub(crate) fn text<'r>(&self, rec: &'r csv::StringRecord, col: usize) -> &'r str {
        rec.get(self.indices[col]).unwrap_or("").trim()
    }

    pub(crate) fn number(
        &self,
        rec: &csv::StringRecord,
        col: usize,
        row: usize,
        names: &[&str],
    ) -> Result<f64, IngestError> {
        let raw = self.text(rec, col);
        match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(IngestError::Cell {
                row,
                column: names[col].to_string(),
                value: raw.to_string(),
            }),
        }
    }
}

pub(crate) fn csv_reader<R: std::io::Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(input)
}

pub(crate) fn check_increasing(prev: Option<f64>, t: f64, row: usize) -> Result<(), IngestError> {
    if let Some(p) = prev {
        if t <= p {
            return Err(IngestError::Validation {
                row,
                message: format!("timestamp {t} does not increase (previous {p})"),
            });
        }
    }
    Ok(())
}
