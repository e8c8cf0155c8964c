//! Control-point binding files and the axis-aligned pixel to GPS mapping.
//!
//! A binding file lists control points, one per line:
//!
//! ```text
//! # comment
//! POINT <px> <py> <lat_deg> <lat_min> <lon_deg> <lon_min>
//! ```
//!
//! Pixel `(0, 0)` is the top-left corner. Latitude decreases downward and
//! longitude increases to the right; all arithmetic is done in total minutes
//! (`deg * 60 + min`).

use alloc::string::String;
use alloc::vec::Vec;

use crate::contour::Contour;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeoError {
    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: String },
    #[error("binding file needs at least 2 control points, found {found}")]
    InsufficientPoints { found: usize },
    #[error("control points are degenerate: {0}")]
    DegeneratePoints(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlPoint {
    pub px: f64,
    pub py: f64,
    pub lat_deg: i32,
    pub lat_min: f64,
    pub lon_deg: i32,
    pub lon_min: f64,
}

impl ControlPoint {
    pub fn lat_total(&self) -> f64 {
        total_minutes(self.lat_deg, self.lat_min)
    }

    pub fn lon_total(&self) -> f64 {
        total_minutes(self.lon_deg, self.lon_min)
    }
}

/// `deg * 60 + min`.
pub fn total_minutes(deg: i32, min: f64) -> f64 {
    f64::from(deg) * 60.0 + min
}

fn parse_line(line_no: usize, fields: &[&str]) -> Result<ControlPoint, GeoError> {
    let err = |reason: String| GeoError::ParseError { line: line_no, reason };
    if fields.len() != 7 {
        return Err(err(alloc::format!(
            "expected `POINT <px> <py> <lat_deg> <lat_min> <lon_deg> <lon_min>`, got {} fields",
            fields.len()
        )));
    }
    let real = |i: usize, name: &str| -> Result<f64, GeoError> {
        fields[i]
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| err(alloc::format!("{name}: `{}` is not a number", fields[i])))
    };
    let int = |i: usize, name: &str| -> Result<i32, GeoError> {
        fields[i]
            .parse::<i32>()
            .map_err(|_| err(alloc::format!("{name}: `{}` is not an integer", fields[i])))
    };
    let point = ControlPoint {
        px: real(1, "px")?,
        py: real(2, "py")?,
        lat_deg: int(3, "lat_deg")?,
        lat_min: real(4, "lat_min")?,
        lon_deg: int(5, "lon_deg")?,
        lon_min: real(6, "lon_min")?,
    };
    if point.px < 0.0 || point.py < 0.0 {
        return Err(err("pixel coordinates must be non-negative".into()));
    }
    for (name, m) in [("lat_min", point.lat_min), ("lon_min", point.lon_min)] {
        if !(0.0..60.0).contains(&m) {
            return Err(err(alloc::format!("{name} {m} outside [0, 60)")));
        }
    }
    Ok(point)
}

/// Parses a whole binding file. Blank lines and `#` comments are skipped.
pub fn parse_binding(text: &str) -> Result<Vec<ControlPoint>, GeoError> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] != "POINT" {
            return Err(GeoError::ParseError {
                line: i + 1,
                reason: alloc::format!("unknown record `{}`", fields[0]),
            });
        }
        points.push(parse_line(i + 1, &fields)?);
    }
    if points.len() < 2 {
        return Err(GeoError::InsufficientPoints { found: points.len() });
    }
    check_spread(&points)?;
    Ok(points)
}

fn check_spread(points: &[ControlPoint]) -> Result<(), GeoError> {
    let first = points[0];
    if points.iter().all(|p| p.px == first.px) {
        return Err(GeoError::DegeneratePoints("all control points share the same px"));
    }
    if points.iter().all(|p| p.py == first.py) {
        return Err(GeoError::DegeneratePoints("all control points share the same py"));
    }
    Ok(())
}

/// Linear pixel to geographic mapping, origin at pixel `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoTransform {
    origin_lat: f64,
    origin_lon: f64,
    dv_lat: f64,
    dv_lon: f64,
}

impl GeoTransform {
    /// All values in minutes; both division values must be positive.
    pub fn new(origin_lat: f64, origin_lon: f64, dv_lat: f64, dv_lon: f64) -> Result<Self, GeoError> {
        if !(dv_lat > 0.0 && dv_lat.is_finite()) {
            return Err(GeoError::DegeneratePoints("latitude division value must be positive"));
        }
        if !(dv_lon > 0.0 && dv_lon.is_finite()) {
            return Err(GeoError::DegeneratePoints("longitude division value must be positive"));
        }
        Ok(Self { origin_lat, origin_lon, dv_lat, dv_lon })
    }

    /// Origin latitude in total minutes.
    pub fn origin_lat(&self) -> f64 {
        self.origin_lat
    }

    /// Origin longitude in total minutes.
    pub fn origin_lon(&self) -> f64 {
        self.origin_lon
    }

    /// Latitude minutes per pixel row.
    pub fn dv_lat(&self) -> f64 {
        self.dv_lat
    }

    /// Longitude minutes per pixel column.
    pub fn dv_lon(&self) -> f64 {
        self.dv_lon
    }
}

/// The two points furthest apart along one pixel axis.
fn widest_pair(points: &[ControlPoint], axis: impl Fn(&ControlPoint) -> f64) -> (ControlPoint, ControlPoint) {
    let mut best = (points[0], points[0]);
    let mut best_d = -1.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = (axis(a) - axis(b)).abs();
            if d > best_d {
                best_d = d;
                best = (*a, *b);
            }
        }
    }
    best
}

/// Division values `|C2 - C1| / |P2 - P1|` per axis, each from the pair of
/// control points with the widest pixel separation on that axis. The origin
/// is extrapolated from the first control point.
pub fn division_values(points: &[ControlPoint]) -> Result<GeoTransform, GeoError> {
    if points.len() < 2 {
        return Err(GeoError::InsufficientPoints { found: points.len() });
    }
    check_spread(points)?;

    let (a, b) = widest_pair(points, |p| p.py);
    let dv_lat = (b.lat_total() - a.lat_total()).abs() / (b.py - a.py).abs();
    let (a, b) = widest_pair(points, |p| p.px);
    let dv_lon = (b.lon_total() - a.lon_total()).abs() / (b.px - a.px).abs();

    let anchor = points[0];
    let origin_lat = anchor.lat_total() + dv_lat * anchor.py;
    let origin_lon = anchor.lon_total() - dv_lon * anchor.px;
    GeoTransform::new(origin_lat, origin_lon, dv_lat, dv_lon)
}

/// A geographic position in signed total minutes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

/// Splits total minutes into whole degrees and `[0, 60)` minutes with
/// `deg * 60 + min == total`.
pub fn degrees_minutes(total: f64) -> (i64, f64) {
    let deg = libm::floor(total / 60.0);
    let mut min = total - deg * 60.0;
    let mut deg = deg as i64;
    if min >= 60.0 {
        min -= 60.0;
        deg += 1;
    } else if min < 0.0 {
        min += 60.0;
        deg -= 1;
    }
    (deg, min)
}

impl GeoPoint {
    pub fn lat_dm(&self) -> (i64, f64) {
        degrees_minutes(self.lat)
    }

    pub fn lon_dm(&self) -> (i64, f64) {
        degrees_minutes(self.lon)
    }
}

pub fn pixel_to_gps(t: &GeoTransform, x: f64, y: f64) -> GeoPoint {
    GeoPoint { lat: t.origin_lat - t.dv_lat * y, lon: t.origin_lon + t.dv_lon * x }
}

/// Pointwise [`pixel_to_gps`], preserving order.
pub fn contour_to_gps(t: &GeoTransform, c: &Contour) -> Vec<GeoPoint> {
    c.points.iter().map(|p| pixel_to_gps(t, p.x as f64, p.y as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::Point;

    fn cp(px: f64, py: f64, lat: (i32, f64), lon: (i32, f64)) -> ControlPoint {
        ControlPoint { px, py, lat_deg: lat.0, lat_min: lat.1, lon_deg: lon.0, lon_min: lon.1 }
    }

    #[test]
    fn parses_two_points() {
        let pts = parse_binding("POINT 0 0 44 36.0 33 30.0\nPOINT 600 400 44 30.0 33 42.0").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1], cp(600.0, 400.0, (44, 30.0), (33, 42.0)));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# exported map fragment\n\n  POINT 0 0 44 36 33 30\n# middle\nPOINT 10 20 44 35.5 33 31\n";
        assert_eq!(parse_binding(text).unwrap().len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_binding(""), Err(GeoError::InsufficientPoints { found: 0 }));
        assert_eq!(parse_binding("POINT 0 0 44 36 33 30"), Err(GeoError::InsufficientPoints { found: 1 }));
        assert!(matches!(parse_binding("POINT 0 0 44"), Err(GeoError::ParseError { line: 1, .. })));
        assert!(matches!(
            parse_binding("POINT 0 0 44 36 33 30\n\nPOINT 1 1 44 61 33 30"),
            Err(GeoError::ParseError { line: 3, .. })
        ));
        assert!(matches!(parse_binding("PT 0 0 44 36 33 30"), Err(GeoError::ParseError { line: 1, .. })));
        assert!(matches!(parse_binding("POINT -1 0 44 36 33 30"), Err(GeoError::ParseError { .. })));
        assert!(matches!(parse_binding("POINT 0 0 44.5 36 33 30"), Err(GeoError::ParseError { .. })));
        assert!(matches!(
            parse_binding("POINT 0 5 44 36 33 30\nPOINT 9 5 44 30 33 40"),
            Err(GeoError::DegeneratePoints(_))
        ));
    }

    #[test]
    fn division_value_examples() {
        let t = division_values(&[cp(0.0, 0.0, (44, 36.0), (44, 59.0)), cp(200.0, 600.0, (44, 30.0), (45, 1.0))])
            .unwrap();
        assert!((t.dv_lat() - 0.01).abs() < 1e-15);
        assert!((t.dv_lon() - 0.01).abs() < 1e-15);
        assert_eq!(t.origin_lat(), 2676.0);
        assert_eq!(t.origin_lon(), 2699.0);
        assert!(matches!(
            division_values(&[cp(0.0, 3.0, (44, 36.0), (33, 0.0)), cp(5.0, 3.0, (44, 30.0), (33, 1.0))]),
            Err(GeoError::DegeneratePoints(_))
        ));
    }

    #[test]
    fn widest_pair_is_used() {
        let pts = [
            cp(100.0, 100.0, (44, 35.0), (33, 31.0)),
            cp(110.0, 101.0, (44, 34.99), (33, 31.1)),
            cp(0.0, 0.0, (44, 36.0), (33, 30.0)),
            cp(400.0, 600.0, (44, 30.0), (33, 34.0)),
        ];
        let t = division_values(&pts).unwrap();
        assert!((t.dv_lat() - 0.01).abs() < 1e-12);
        assert!((t.dv_lon() - 0.01).abs() < 1e-12);
        // origin extrapolated from the first point: 2675 + 0.01 * 100
        assert!((t.origin_lat() - 2676.0).abs() < 1e-9);
        assert!((t.origin_lon() - 2010.0).abs() < 1e-9);
    }

    #[test]
    fn pixel_to_gps_examples() {
        let t = GeoTransform::new(2676.0, 2010.0, 0.01, 0.02).unwrap();
        assert_eq!(pixel_to_gps(&t, 0.0, 0.0), GeoPoint { lat: 2676.0, lon: 2010.0 });
        let p = pixel_to_gps(&t, 50.0, 100.0);
        assert_eq!(p.lat, 2675.0);
        assert_eq!(p.lon, 2011.0);
        assert_eq!(p.lat_dm(), (44, 35.0));
        assert_eq!(p.lon_dm(), (33, 31.0));
    }

    #[test]
    fn transform_rejects_nonpositive_dv() {
        assert!(GeoTransform::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(GeoTransform::new(0.0, 0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn degree_minute_views() {
        assert_eq!(degrees_minutes(2675.5), (44, 35.5));
        assert_eq!(degrees_minutes(-30.5), (-1, 29.5));
        assert_eq!(degrees_minutes(0.0), (0, 0.0));
    }

    #[test]
    fn contour_mapping() {
        let t = GeoTransform::new(2676.0, 2010.0, 0.01, 0.02).unwrap();
        assert!(contour_to_gps(&t, &Contour { points: Vec::new(), closed: true }).is_empty());
        let single = Contour { points: alloc::vec![Point::new(0, 0)], closed: true };
        assert_eq!(contour_to_gps(&t, &single), alloc::vec![GeoPoint { lat: 2676.0, lon: 2010.0 }]);
    }
}
