//! Local east-north frame around the airfield.
//!
//! Equirectangular: meters per degree are fixed at the reference latitude.
//! Over a traffic pattern (tens of kilometers) the error stays far below the
//! path deviations being measured.

pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFrame {
    pub lon0: f64,
    pub lat0: f64,
    m_per_deg_lat: f64,
    m_per_deg_lon: f64,
}

impl LocalFrame {
    pub fn new(lon0: f64, lat0: f64) -> Self {
        let m_per_deg_lat = EARTH_RADIUS_M * std::f64::consts::PI / 180.0;
        LocalFrame {
            lon0,
            lat0,
            m_per_deg_lat,
            m_per_deg_lon: m_per_deg_lat * lat0.to_radians().cos(),
        }
    }

    /// (east, north) meters of a position relative to the frame origin.
    pub fn to_local(&self, lon: f64, lat: f64) -> (f64, f64) {
        (
            (lon - self.lon0) * self.m_per_deg_lon,
            (lat - self.lat0) * self.m_per_deg_lat,
        )
    }

    pub fn to_geodetic(&self, east: f64, north: f64) -> (f64, f64) {
        (
            self.lon0 + east / self.m_per_deg_lon,
            self.lat0 + north / self.m_per_deg_lat,
        )
    }

    /// (east, north) offset in meters from `(lon_b, lat_b)` to `(lon_a, lat_a)`.
    pub fn offset(&self, lon_a: f64, lat_a: f64, lon_b: f64, lat_b: f64) -> (f64, f64) {
        (
            (lon_a - lon_b) * self.m_per_deg_lon,
            (lat_a - lat_b) * self.m_per_deg_lat,
        )
    }
}
