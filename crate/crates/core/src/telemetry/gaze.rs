use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use super::aoi::{format_aoi_cell, parse_aoi_cell, AoiName};
use super::{check_increasing, csv_reader, ColumnMap, IngestError};

/// Column names of a gaze log, in the order they are written.
pub const GAZE_COLUMNS: [&str; 20] = [
    "timestamp", "FOL_X", "FOL_Y", "FOL_Z", "FOR_X", "FOR_Y", "FOR_Z", "FVL_X", "FVL_Y",
    "FVL_Z", "FVR_X", "FVR_Y", "FVR_Z", "EOL", "EOR", "PPLX", "PPLY", "PPRX", "PPRY", "AOIName",
];

/// One row of a headset gaze log.
#[derive(Debug, Clone, PartialEq)]
pub struct GazeSample {
    /// Seconds.
    pub timestamp: f64,
    /// Gaze origins in millimeters.
    pub gaze_origin_left: [f64; 3],
    pub gaze_origin_right: [f64; 3],
    /// Gaze directions, components normalized to [-1, 1].
    pub gaze_dir_left: [f64; 3],
    pub gaze_dir_right: [f64; 3],
    /// Eye openness in [0, 1].
    pub eye_open_left: f64,
    pub eye_open_right: f64,
    /// Pupil positions in [-1, 1].
    pub pupil_pos_left: [f64; 2],
    pub pupil_pos_right: [f64; 2],
    pub aoi: Option<AoiName>,
}

pub fn parse_gaze_file(path: impl AsRef<Path>) -> Result<Vec<GazeSample>, IngestError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            IngestError::MissingFile { path: path.into() }
        } else {
            IngestError::Io {
                path: path.into(),
                source,
            }
        }
    })?;
    parse_gaze_log(BufReader::with_capacity(1 << 16, file)).map_err(|e| e.in_file(path))
}

/// Parse a gaze log. Rows are numbered from 1 (the first data row).
pub fn parse_gaze_log<R: Read>(input: R) -> Result<Vec<GazeSample>, IngestError> {
    let mut reader = csv_reader(input);
    let headers = reader
        .headers()
        .map_err(|source| IngestError::Record { row: 0, source })?
        .clone();
    let cols = ColumnMap::resolve(&headers, &GAZE_COLUMNS)?;
    let mut out = Vec::new();
    let mut record = csv::StringRecord::new();
    let mut prev = None;
    let mut row = 0;
    loop {
        match reader.read_record(&mut record) {
            Ok(true) => {}
            Ok(false) => break,
            Err(source) => return Err(IngestError::Record { row: row + 1, source }),
        }
        row += 1;
        let num = |c: usize| cols.number(&record, c, row, &GAZE_COLUMNS);
        let timestamp = num(0)?;
        check_increasing(prev, timestamp, row)?;
        prev = Some(timestamp);
        let triple = |c: usize| -> Result<[f64; 3], IngestError> { Ok([num(c)?, num(c + 1)?, num(c + 2)?]) };
        let gaze_dir_left = triple(7)?;
        let gaze_dir_right = triple(10)?;
        for (dir, first) in [(&gaze_dir_left, 7), (&gaze_dir_right, 10)] {
            check_unit_range(dir, row, first)?;
        }
        let pupil_pos_left = [num(15)?, num(16)?];
        let pupil_pos_right = [num(17)?, num(18)?];
        check_unit_range(&pupil_pos_left, row, 15)?;
        check_unit_range(&pupil_pos_right, row, 17)?;
        out.push(GazeSample {
            timestamp,
            gaze_origin_left: triple(1)?,
            gaze_origin_right: triple(4)?,
            gaze_dir_left,
            gaze_dir_right,
            eye_open_left: num(13)?.clamp(0.0, 1.0),
            eye_open_right: num(14)?.clamp(0.0, 1.0),
            pupil_pos_left,
            pupil_pos_right,
            aoi: parse_aoi_cell(cols.text(&record, 19)),
        });
    }
    log::debug!("parsed {} gaze rows", out.len());
    Ok(out)
}

fn check_unit_range(values: &[f64], row: usize, first_col: usize) -> Result<(), IngestError> {
    for (k, v) in values.iter().enumerate() {
        if v.abs() > 1.0 {
            return Err(IngestError::Validation {
                row,
                message: format!("{} = {v} outside [-1, 1]", GAZE_COLUMNS[first_col + k]),
            });
        }
    }
    Ok(())
}

/// Write a gaze log. Numbers use the shortest representation that parses
/// back to the same value, so write → parse is lossless.
pub fn write_gaze_log<W: Write>(samples: &[GazeSample], out: W) -> std::io::Result<()> {
    let mut w = std::io::BufWriter::with_capacity(1 << 16, out);
    writeln!(w, "{}", GAZE_COLUMNS.join(","))?;
    for s in samples {
        write!(w, "{}", s.timestamp)?;
        for v in s
            .gaze_origin_left
            .iter()
            .chain(&s.gaze_origin_right)
            .chain(&s.gaze_dir_left)
            .chain(&s.gaze_dir_right)
            .chain([&s.eye_open_left, &s.eye_open_right])
            .chain(&s.pupil_pos_left)
            .chain(&s.pupil_pos_right)
        {
            write!(w, ",{v}")?;
        }
        writeln!(w, ",{}", format_aoi_cell(s.aoi))?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "timestamp,FOL_X,FOL_Y,FOL_Z,FOR_X,FOR_Y,FOR_Z,FVL_X,FVL_Y,FVL_Z,FVR_X,FVR_Y,FVR_Z,EOL,EOR,PPLX,PPLY,PPRX,PPRY,AOIName";

    fn row(t: f64, aoi: &str) -> String {
        format!("{t},31,2,-5,-31,2,-5,0.1,-0.2,0.97,0.1,-0.2,0.97,0.9,0.88,0.05,-0.1,0.04,-0.1,{aoi}")
    }

    #[test]
    fn single_row_parses() {
        let text = format!("{HEADER}\n{}\n", row(0.5, "altitude indicator"));
        let s = parse_gaze_log(text.as_bytes()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].aoi, Some(AoiName::AltitudeIndicator));
        assert_eq!(s[0].gaze_dir_left, [0.1, -0.2, 0.97]);
        assert_eq!(s[0].eye_open_right, 0.88);
    }

    #[test]
    fn column_order_is_free() {
        let mut cols: Vec<&str> = HEADER.split(',').collect();
        let mut vals: Vec<String> = row(1.0, "tachometer").split(',').map(String::from).collect();
        cols.reverse();
        vals.reverse();
        let text = format!("{}\n{}\n", cols.join(","), vals.join(","));
        let s = parse_gaze_log(text.as_bytes()).unwrap();
        assert_eq!(s[0].timestamp, 1.0);
        assert_eq!(s[0].aoi, Some(AoiName::Tachometer));
    }

    #[test]
    fn repeated_timestamp_is_rejected_with_row() {
        let text = format!("{HEADER}\n{}\n{}\n", row(0.5, ""), row(0.5, ""));
        match parse_gaze_log(text.as_bytes()) {
            Err(IngestError::Validation { row, .. }) => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_column_is_named() {
        let header = HEADER.replace(",EOR", "");
        let text = format!("{header}\n");
        match parse_gaze_log(text.as_bytes()) {
            Err(IngestError::MissingColumn { column }) => assert_eq!(column, "EOR"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_cell_has_coordinates() {
        let text = format!("{HEADER}\n{}\n", row(0.5, "").replacen("31", "abc", 1));
        match parse_gaze_log(text.as_bytes()) {
            Err(IngestError::Cell { row, column, value }) => {
                assert_eq!((row, column.as_str(), value.as_str()), (1, "FOL_X", "abc"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn eye_opening_is_clamped() {
        let text = format!("{HEADER}\n{}\n", row(0.5, "").replace(",0.9,0.88,", ",1.2,-0.1,"));
        let s = parse_gaze_log(text.as_bytes()).unwrap();
        assert_eq!((s[0].eye_open_left, s[0].eye_open_right), (1.0, 0.0));
    }

    #[test]
    fn direction_component_out_of_range_is_rejected() {
        let text = format!("{HEADER}\n{}\n", row(0.5, "").replace(",0.97,0.1", ",1.5,0.1"));
        assert!(matches!(
            parse_gaze_log(text.as_bytes()),
            Err(IngestError::Validation { row: 1, .. })
        ));
    }
}
