use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use super::{check_increasing, csv_reader, ColumnMap, IngestError};

/// Column names of a flight log, in the order they are written.
pub const FLIGHT_COLUMNS: [&str; 18] = [
    "timestamp",
    "roll",
    "pitch",
    "yaw",
    "longitude",
    "latitude",
    "agl",
    "asl",
    "tas",
    "gs",
    "vertical_speed",
    "aoa",
    "rudder_input",
    "elevator_input",
    "roll_input",
    "ref_longitude",
    "ref_latitude",
    "ref_height",
];

/// Lowest AGL reading accepted from the simulator (sensor noise floor), meters.
pub const AGL_NOISE_FLOOR: f64 = -0.5;

/// One row of a simulator flight-dynamics log.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightSample {
    /// Seconds.
    pub timestamp: f64,
    /// Attitude, degrees.
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
    /// Position, degrees.
    pub longitude: f64,
    pub latitude: f64,
    /// Height above ground / sea level, meters.
    pub agl: f64,
    pub asl: f64,
    /// True airspeed and ground speed, m/s.
    pub tas: f64,
    pub gs: f64,
    /// m/s, positive up.
    pub vertical_speed: f64,
    /// Angle of attack, degrees.
    pub aoa: f64,
    /// Control inputs in [-1, 1].
    pub rudder_input: f64,
    pub elevator_input: f64,
    pub roll_input: f64,
    /// Nearest point on the reference centerline: longitude, latitude (deg),
    /// height above sea level (m).
    pub nearest_ref: [f64; 3],
}

pub fn parse_flight_file(path: impl AsRef<Path>) -> Result<Vec<FlightSample>, IngestError> {
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
    parse_flight_log(BufReader::with_capacity(1 << 16, file)).map_err(|e| e.in_file(path))
}

/// Parse a flight log. Rows are numbered from 1 (the first data row).
pub fn parse_flight_log<R: Read>(input: R) -> Result<Vec<FlightSample>, IngestError> {
    let mut reader = csv_reader(input);
    let headers = reader
        .headers()
        .map_err(|source| IngestError::Record { row: 0, source })?
        .clone();
    let cols = ColumnMap::resolve(&headers, &FLIGHT_COLUMNS)?;
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
        let mut v = [0.0; 18];
        for (c, slot) in v.iter_mut().enumerate() {
            *slot = cols.number(&record, c, row, &FLIGHT_COLUMNS)?;
        }
        check_increasing(prev, v[0], row)?;
        prev = Some(v[0]);
        let sample = FlightSample {
            timestamp: v[0],
            roll: v[1],
            pitch: v[2],
            yaw: v[3],
            longitude: v[4],
            latitude: v[5],
            agl: v[6],
            asl: v[7],
            tas: v[8],
            gs: v[9],
            vertical_speed: v[10],
            aoa: v[11],
            rudder_input: v[12],
            elevator_input: v[13],
            roll_input: v[14],
            nearest_ref: [v[15], v[16], v[17]],
        };
        validate(&sample, row)?;
        out.push(sample);
    }
    log::debug!("parsed {} flight rows", out.len());
    Ok(out)
}

fn validate(s: &FlightSample, row: usize) -> Result<(), IngestError> {
    let fail = |message: String| Err(IngestError::Validation { row, message });
    if s.agl < AGL_NOISE_FLOOR {
        return fail(format!("agl {} below noise floor {AGL_NOISE_FLOOR} m", s.agl));
    }
    if s.roll.abs() > 180.0 || s.pitch.abs() > 180.0 {
        return fail(format!("attitude out of range (roll {}, pitch {})", s.roll, s.pitch));
    }
    for (name, v) in [
        ("rudder_input", s.rudder_input),
        ("elevator_input", s.elevator_input),
        ("roll_input", s.roll_input),
    ] {
        if v.abs() > 1.0 {
            return fail(format!("{name} = {v} outside [-1, 1]"));
        }
    }
    Ok(())
}

/// Write a flight log; lossless with respect to [`parse_flight_log`].
pub fn write_flight_log<W: Write>(samples: &[FlightSample], out: W) -> std::io::Result<()> {
    let mut w = std::io::BufWriter::with_capacity(1 << 16, out);
    writeln!(w, "{}", FLIGHT_COLUMNS.join(","))?;
    for s in samples {
        let v = [
            s.roll,
            s.pitch,
            s.yaw,
            s.longitude,
            s.latitude,
            s.agl,
            s.asl,
            s.tas,
            s.gs,
            s.vertical_speed,
            s.aoa,
            s.rudder_input,
            s.elevator_input,
            s.roll_input,
            s.nearest_ref[0],
            s.nearest_ref[1],
            s.nearest_ref[2],
        ];
        write!(w, "{}", s.timestamp)?;
        for x in v {
            write!(w, ",{x}")?;
        }
        writeln!(w)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(t: f64, agl: f64, gs: f64) -> String {
        format!("{t},1.5,2.0,90,121.0,31.0,{agl},{},40,{gs},0,4,0.1,-0.2,0.0,121.0,31.0,5", agl + 5.0)
    }

    fn doc(rows: &[String]) -> String {
        let mut s = FLIGHT_COLUMNS.join(",");
        s.push('\n');
        for r in rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }

    #[test]
    fn single_row_parses() {
        let s = parse_flight_log(doc(&[line(0.0, 10.0, 40.0)]).as_bytes()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].agl, 10.0);
        assert_eq!(s[0].nearest_ref, [121.0, 31.0, 5.0]);
    }

    #[test]
    fn agl_below_noise_floor_is_rejected() {
        let err = parse_flight_log(doc(&[line(0.0, -2.0, 0.0)]).as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::Validation { row: 1, .. }), "{err}");
        // the floor itself is accepted
        assert!(parse_flight_log(doc(&[line(0.0, -0.5, 0.0)]).as_bytes()).is_ok());
    }

    #[test]
    fn stationary_rows_pass() {
        let rows: Vec<_> = (0..3).map(|i| line(i as f64 / 30.0, 0.0, 0.0)).collect();
        let s = parse_flight_log(doc(&rows).as_bytes()).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|x| x.gs == 0.0 && x.longitude == 121.0));
    }

    #[test]
    fn decreasing_timestamp_is_rejected() {
        let rows = vec![line(1.0, 0.0, 0.0), line(0.5, 0.0, 0.0)];
        assert!(matches!(
            parse_flight_log(doc(&rows).as_bytes()),
            Err(IngestError::Validation { row: 2, .. })
        ));
    }

    #[test]
    fn attitude_range_checked() {
        let bad = line(0.0, 0.0, 0.0).replacen(",1.5,", ",190,", 1);
        assert!(parse_flight_log(doc(&[bad]).as_bytes()).is_err());
    }
}
