//! The three result files plus optional diagnostic rasters.
//!
//! * `regions.csv`: `region_id,area_px,perimeter_px,area_km,perimeter_km,mode`
//! * `contours.csv`: `region_id,point_index,lat_deg,lat_min,lon_deg,lon_min`
//! * `contours.txt`: per region a `REGION <id> <n_points>` line followed by
//!   `n_points` lines of `<lat_deg> <lat_min> <lon_deg> <lon_min>`; regions
//!   are separated by one blank line.
//!
//! Reals are printed with 6 decimals. Coordinates are rounded to a
//! millionth of a minute before being split into degrees and minutes, so
//! minutes never print as `60.000000`.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use shoreline_core::{GeoPoint, OperatorComparison};

use crate::pipeline::PipelineReport;
use crate::raster_io::{save_mask, RasterIoError};

pub const REGIONS_FILE: &str = "regions.csv";
pub const CONTOURS_CSV_FILE: &str = "contours.csv";
pub const CONTOURS_TXT_FILE: &str = "contours.txt";
pub const COMPARISON_FILE: &str = "operators.csv";

const MICROS_PER_DEGREE: i64 = 60_000_000;

/// `(degrees, "mm.mmmmmm")` for a total-minutes coordinate.
pub fn format_dm(total_minutes: f64) -> (i64, String) {
    let micros = (total_minutes * 1e6).round() as i64;
    let deg = micros.div_euclid(MICROS_PER_DEGREE);
    let rem = micros.rem_euclid(MICROS_PER_DEGREE);
    (deg, format!("{}.{:06}", rem / 1_000_000, rem % 1_000_000))
}

fn coords(p: &GeoPoint) -> [String; 4] {
    let (lat_deg, lat_min) = format_dm(p.lat);
    let (lon_deg, lon_min) = format_dm(p.lon);
    [lat_deg.to_string(), lat_min, lon_deg.to_string(), lon_min]
}

pub fn regions_csv(report: &PipelineReport) -> String {
    let mut out = String::from("region_id,area_px,perimeter_px,area_km,perimeter_km,mode\n");
    for r in &report.regions {
        writeln!(
            out,
            "{},{},{:.6},{:.6},{:.6},{}",
            r.region_id, r.area_px, r.perimeter_px, r.area_km, r.perimeter_km, r.mode
        )
        .unwrap();
    }
    out
}

pub fn contours_csv(report: &PipelineReport) -> String {
    let mut out = String::from("region_id,point_index,lat_deg,lat_min,lon_deg,lon_min\n");
    for (region, points) in report.regions.iter().zip(&report.geo_contours) {
        for (i, p) in points.iter().enumerate() {
            let [a, b, c, d] = coords(p);
            writeln!(out, "{},{i},{a},{b},{c},{d}", region.region_id).unwrap();
        }
    }
    out
}

pub fn contours_txt(report: &PipelineReport) -> String {
    let blocks: Vec<String> = report
        .regions
        .iter()
        .zip(&report.geo_contours)
        .map(|(region, points)| {
            let mut block = format!("REGION {} {}\n", region.region_id, points.len());
            for p in points {
                let [a, b, c, d] = coords(p);
                writeln!(block, "{a} {b} {c} {d}").unwrap();
            }
            block
        })
        .collect();
    blocks.join("\n")
}

fn write_file(path: PathBuf, contents: &str) -> io::Result<()> {
    fs::write(&path, contents).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

/// Writes `regions.csv`, `contours.csv` and `contours.txt` into `dir`,
/// creating it if needed.
pub fn write_outputs(report: &PipelineReport, dir: impl AsRef<Path>) -> io::Result<()> {
    let dir = dir.as_ref();
    let files = [
        (REGIONS_FILE, regions_csv(report)),
        (CONTOURS_CSV_FILE, contours_csv(report)),
        (CONTOURS_TXT_FILE, contours_txt(report)),
    ];
    fs::create_dir_all(dir)?;
    for (name, contents) in &files {
        write_file(dir.join(name), contents)?;
    }
    Ok(())
}

/// Saves the binarized, cleaned and edge masks when the report carries them.
pub fn write_diagnostics(report: &PipelineReport, dir: impl AsRef<Path>) -> Result<(), RasterIoError> {
    let Some(diag) = &report.diagnostics else {
        return Ok(());
    };
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|source| RasterIoError::Io { path: dir.to_owned(), source })?;
    save_mask(&diag.hsv_mask, dir.join("mask_hsv.png"))?;
    save_mask(&diag.cleaned, dir.join("mask_cleaned.png"))?;
    save_mask(&diag.edges, dir.join(format!("edges_{}.png", report.config.operator)))
}

pub fn comparison_csv(cmp: &OperatorComparison) -> String {
    let mut out = String::from(
        "operator,edge_pixels,mean_magnitude,interior_edge_pixels,interior_mean_magnitude,interior_mean_abs_gx,interior_mean_abs_gy\n",
    );
    for e in &cmp.entries {
        writeln!(
            out,
            "{},{},{:.6},{},{:.6},{:.6},{:.6}",
            e.kind,
            e.edge_pixels,
            e.mean_magnitude,
            e.interior_edge_pixels,
            e.interior_mean_magnitude,
            e.interior_mean_abs_gx,
            e.interior_mean_abs_gy
        )
        .unwrap();
    }
    out
}

/// Writes `operators.csv` and one `edges_<operator>.png` per operator.
pub fn write_comparison(cmp: &OperatorComparison, dir: impl AsRef<Path>) -> Result<(), RasterIoError> {
    let dir = dir.as_ref();
    let io_err = |source| RasterIoError::Io { path: dir.to_owned(), source };
    fs::create_dir_all(dir).map_err(io_err)?;
    write_file(dir.join(COMPARISON_FILE), &comparison_csv(cmp)).map_err(io_err)?;
    for e in &cmp.entries {
        save_mask(&e.edges, dir.join(format!("edges_{}.png", e.kind)))?;
    }
    Ok(())
}
