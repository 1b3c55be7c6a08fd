use std::fmt;

use serde::{Deserialize, Serialize};

/// Cockpit areas of interest a gaze sample can be attributed to.
///
/// The 19 named members are the instruments and glass panels of the
/// simulator cockpit. Strings that match none of them parse to
/// [`AoiName::Unknown`], never to a named member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AoiName {
    AircraftClocks,
    AirspeedIndicator,
    AttitudeIndicator,
    VerticalSpeedIndicator,
    RadioCompass,
    InletPressureGauge,
    AltitudeIndicator,
    TurnAndSlipIndicator,
    AircraftTriUseMeter,
    MagneticCourseCorrectionCalculator,
    Tachometer,
    CylinderHeadThermometer,
    AirInletTemperatureIndicator,
    CurrentAndVoltageMeters,
    TankPressureGauge,
    SpareMagneticCompass,
    LeftCockpitGlass,
    FrontCockpitGlass,
    RightCockpitGlass,
    Unknown,
}

const LABELS: [&str; 19] = [
    "aircraft clocks",
    "airspeed indicator",
    "attitude indicator",
    "vertical speed indicator",
    "radio compass",
    "inlet pressure gauge",
    "altitude indicator",
    "turn-and-slip indicator",
    "aircraft tri-use meter",
    "magnetic course correction calculator",
    "tachometer",
    "cylinder head thermometer",
    "air inlet temperature indicator",
    "current and voltage meters",
    "tank pressure gauge",
    "spare magnetic compass",
    "left aircraft cockpit glass",
    "front aircraft cockpit glass",
    "right aircraft cockpit glass",
];

const KEYS: [&str; 19] = [
    "aircraft_clocks",
    "airspeed_indicator",
    "attitude_indicator",
    "vertical_speed_indicator",
    "radio_compass",
    "inlet_pressure_gauge",
    "altitude_indicator",
    "turn_and_slip_indicator",
    "aircraft_tri_use_meter",
    "magnetic_course_correction_calculator",
    "tachometer",
    "cylinder_head_thermometer",
    "air_inlet_temperature_indicator",
    "current_and_voltage_meters",
    "tank_pressure_gauge",
    "spare_magnetic_compass",
    "left_aircraft_cockpit_glass",
    "front_aircraft_cockpit_glass",
    "right_aircraft_cockpit_glass",
];

impl AoiName {
    pub const COUNT: usize = 19;

    /// The 19 named AOIs in canonical (registry) order.
    pub const NAMED: [AoiName; 19] = [
        AoiName::AircraftClocks,
        AoiName::AirspeedIndicator,
        AoiName::AttitudeIndicator,
        AoiName::VerticalSpeedIndicator,
        AoiName::RadioCompass,
        AoiName::InletPressureGauge,
        AoiName::AltitudeIndicator,
        AoiName::TurnAndSlipIndicator,
        AoiName::AircraftTriUseMeter,
        AoiName::MagneticCourseCorrectionCalculator,
        AoiName::Tachometer,
        AoiName::CylinderHeadThermometer,
        AoiName::AirInletTemperatureIndicator,
        AoiName::CurrentAndVoltageMeters,
        AoiName::TankPressureGauge,
        AoiName::SpareMagneticCompass,
        AoiName::LeftCockpitGlass,
        AoiName::FrontCockpitGlass,
        AoiName::RightCockpitGlass,
    ];

    /// Position in [`AoiName::NAMED`], `None` for `Unknown`.
    pub fn index(self) -> Option<usize> {
        match self {
            AoiName::Unknown => None,
            named => Some(named as usize),
        }
    }

    /// Human-readable label as written in gaze logs.
    pub fn label(self) -> &'static str {
        self.index().map_or("unknown", |i| LABELS[i])
    }

    /// snake_case key used in feature names (`aoi.<key>`).
    pub fn key(self) -> &'static str {
        self.index().map_or("unknown", |i| KEYS[i])
    }

    /// Case-, whitespace-, hyphen- and underscore-insensitive lookup.
    pub fn parse(s: &str) -> AoiName {
        let wanted = normalize(s);
        LABELS
            .iter()
            .position(|l| normalize(l) == wanted)
            .map_or(AoiName::Unknown, |i| AoiName::NAMED[i])
    }
}

impl fmt::Display for AoiName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn normalize(s: &str) -> String {
    s.split(|c: char| c.is_whitespace() || c == '-' || c == '_')
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parse the `AOIName` cell of a gaze log. Empty cells and `none` mean the
/// gaze hit no AOI.
pub fn parse_aoi_cell(s: &str) -> Option<AoiName> {
    let t = s.trim();
    if t.is_empty() || t.eq_ignore_ascii_case("none") {
        None
    } else {
        Some(AoiName::parse(t))
    }
}

pub fn format_aoi_cell(aoi: Option<AoiName>) -> &'static str {
    aoi.map_or("", AoiName::label)
}
