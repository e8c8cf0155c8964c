//! Region area/perimeter in pixels and their kilometer conversion.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::contour::Contour;
use crate::georef::GeoTransform;
use crate::morphology::LabelMap;

/// Metres in one geographic minute (one nautical mile).
const METRES_PER_MINUTE: f64 = 1852.0;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("{contours} contours supplied for {regions} labeled regions")]
    MismatchedContours { regions: usize, contours: usize },
}

/// How pixel measurements become kilometers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AreaMode {
    /// One linear factor `KP = 1.852 * dv_lat` for both area and perimeter.
    Faithful,
    /// Area uses `KP_lat * KP_lon` (km^2 per pixel) with the longitude
    /// factor scaled by `cos(origin latitude)`.
    #[default]
    Corrected,
}

impl AreaMode {
    pub fn name(self) -> &'static str {
        match self {
            AreaMode::Faithful => "faithful",
            AreaMode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for AreaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AreaMode {
    type Err = alloc::string::String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "faithful" => Ok(AreaMode::Faithful),
            "corrected" => Ok(AreaMode::Corrected),
            _ => Err(alloc::format!("unknown area mode `{s}` (expected faithful or corrected)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPixelStats {
    pub region_id: u32,
    pub area_px: usize,
    /// Length of the traced closed contour: 1 per axis step, sqrt(2) per diagonal.
    pub perimeter_px: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionStats {
    pub region_id: u32,
    pub area_px: usize,
    pub perimeter_px: f64,
    pub area_km: f64,
    pub perimeter_km: f64,
    pub mode: AreaMode,
}

/// Step length of a closed contour. Single-point contours measure 0.
pub fn contour_length(c: &Contour) -> f64 {
    c.steps()
        .map(|(a, b)| if a.x != b.x && a.y != b.y { core::f64::consts::SQRT_2 } else { 1.0 })
        .sum()
}

/// Per-region pixel measurements. `contours[i]` must belong to label `i + 1`.
pub fn region_stats(labels: &LabelMap, contours: &[Contour]) -> Result<Vec<RegionPixelStats>, MetricsError> {
    if contours.len() != labels.region_count() {
        return Err(MetricsError::MismatchedContours {
            regions: labels.region_count(),
            contours: contours.len(),
        });
    }
    Ok(labels
        .areas()
        .into_iter()
        .zip(contours)
        .enumerate()
        .map(|(i, (area_px, c))| RegionPixelStats {
            region_id: i as u32 + 1,
            area_px,
            perimeter_px: contour_length(c),
        })
        .collect())
}

/// Kilometers per pixel along the latitude axis, `1.852 * dv_lat`.
pub fn km_per_pixel_lat(t: &GeoTransform) -> f64 {
    METRES_PER_MINUTE * t.dv_lat() / 1000.0
}

/// Kilometers per pixel along the longitude axis at the origin latitude.
pub fn km_per_pixel_lon(t: &GeoTransform) -> f64 {
    let lat_rad = (t.origin_lat() / 60.0).to_radians();
    METRES_PER_MINUTE * t.dv_lon() / 1000.0 * libm::cos(lat_rad)
}

pub fn to_kilometers(stats: &RegionPixelStats, t: &GeoTransform, mode: AreaMode) -> RegionStats {
    let kp = km_per_pixel_lat(t);
    let area_px = stats.area_px as f64;
    let area_km = match mode {
        AreaMode::Faithful => area_px * kp,
        AreaMode::Corrected => area_px * kp * km_per_pixel_lon(t),
    };
    RegionStats {
        region_id: stats.region_id,
        area_px: stats.area_px,
        perimeter_px: stats.perimeter_px,
        area_km,
        perimeter_km: stats.perimeter_px * kp,
        mode,
    }
}
