//! End-to-end driver: fragment + binding file -> per-region report.

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use shoreline_core::{
    clean, compare_operators, contour_to_gps, division_values, edge_mask, gradient, hsv_mask, label_components,
    parse_binding, region_stats, to_kilometers, Contour, GeoError, GeoPoint, GeoTransform, HsvRange, Mask,
    MetricsError, MorphOrder, OperatorComparison, RegionStats, StructuringElement, StructuringElementError,
};

use crate::config::{ConfigError, PipelineConfig};
use crate::raster_io::{load_image, RasterIoError};

/// The nine processing stages, numbered as the CLI reports them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Acquire = 1,
    Binarize = 2,
    Clean = 3,
    Edges = 4,
    LoadBinding = 5,
    DivisionValues = 6,
    Georeference = 7,
    Measure = 8,
}

impl Stage {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::Acquire => "load image",
            Stage::Binarize => "hsv mask",
            Stage::Clean => "morphological cleanup",
            Stage::Edges => "edges and contours",
            Stage::LoadBinding => "load binding file",
            Stage::DivisionValues => "division values",
            Stage::Georeference => "pixel to gps",
            Stage::Measure => "area and perimeter",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {}", self.number())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("stage 1: {0}")]
    Image(#[source] RasterIoError),
    #[error("stage 3: {0}")]
    StructuringElement(#[source] StructuringElementError),
    #[error("stage 5: {}: {source}", .path.display())]
    BindingRead { path: PathBuf, source: io::Error },
    #[error("stage 5: {0}")]
    Binding(#[source] GeoError),
    #[error("stage 6: {0}")]
    Transform(#[source] GeoError),
    #[error("stage 8: {0}")]
    Metrics(#[source] MetricsError),
}

impl PipelineError {
    pub fn stage(&self) -> Option<Stage> {
        match self {
            PipelineError::Config(_) => None,
            PipelineError::Image(_) => Some(Stage::Acquire),
            PipelineError::StructuringElement(_) => Some(Stage::Clean),
            PipelineError::BindingRead { .. } | PipelineError::Binding(_) => Some(Stage::LoadBinding),
            PipelineError::Transform(_) => Some(Stage::DivisionValues),
            PipelineError::Metrics(_) => Some(Stage::Measure),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageTiming {
    pub stage: Stage,
    pub elapsed: Duration,
}

/// Intermediate rasters kept when diagnostics are requested.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub hsv_mask: Mask,
    pub cleaned: Mask,
    pub edges: Mask,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    /// One entry per region, ordered by region id.
    pub regions: Vec<RegionStats>,
    /// Index-aligned with `regions`.
    pub contours: Vec<Contour>,
    /// Index-aligned with `regions`.
    pub geo_contours: Vec<Vec<GeoPoint>>,
    pub transform: GeoTransform,
    /// Nonzero-gradient pixels for the configured operator and threshold.
    pub edge_pixels: usize,
    pub stage_timings: Vec<StageTiming>,
    pub config: PipelineConfig,
    pub diagnostics: Option<Diagnostics>,
}

impl PipelineReport {
    /// The cleaned mask held no water. Empty outputs are still written.
    pub fn no_regions_found(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn total(&self) -> Duration {
        self.stage_timings.iter().map(|t| t.elapsed).sum()
    }
}

struct Timer {
    timings: Vec<StageTiming>,
    last: Instant,
}

impl Timer {
    fn new() -> Self {
        Self { timings: Vec::new(), last: Instant::now() }
    }

    fn lap(&mut self, stage: Stage) {
        let now = Instant::now();
        self.timings.push(StageTiming { stage, elapsed: now - self.last });
        self.last = now;
    }
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineReport, PipelineError> {
    cfg.validate()?;
    let mut timer = Timer::new();

    let image = load_image(&cfg.image_path).map_err(PipelineError::Image)?;
    timer.lap(Stage::Acquire);

    let water = hsv_mask(&image, &cfg.hsv_range);
    timer.lap(Stage::Binarize);

    let se = StructuringElement::square(cfg.se_size).map_err(PipelineError::StructuringElement)?;
    let cleaned = clean(&water, &se, cfg.min_area, cfg.morph_order);
    timer.lap(Stage::Clean);

    let edges = edge_mask(&gradient(&cleaned, cfg.operator), cfg.edge_threshold);
    let labels = label_components(&cleaned);
    let contours = shoreline_core::trace_contours(&cleaned);
    timer.lap(Stage::Edges);

    let text = std::fs::read_to_string(&cfg.binding_path)
        .map_err(|source| PipelineError::BindingRead { path: cfg.binding_path.clone(), source })?;
    let points = parse_binding(&text).map_err(PipelineError::Binding)?;
    timer.lap(Stage::LoadBinding);

    let transform = division_values(&points).map_err(PipelineError::Transform)?;
    timer.lap(Stage::DivisionValues);

    let geo_contours: Vec<Vec<GeoPoint>> = contours.iter().map(|c| contour_to_gps(&transform, c)).collect();
    timer.lap(Stage::Georeference);

    let regions = region_stats(&labels, &contours)
        .map_err(PipelineError::Metrics)?
        .iter()
        .map(|s| to_kilometers(s, &transform, cfg.area_mode))
        .collect();
    timer.lap(Stage::Measure);

    let edge_pixels = edges.count_ones();
    let diagnostics = cfg.emit_diagnostics.then_some(Diagnostics { hsv_mask: water, cleaned, edges });
    Ok(PipelineReport {
        regions,
        contours,
        geo_contours,
        transform,
        edge_pixels,
        stage_timings: timer.timings,
        config: cfg.clone(),
        diagnostics,
    })
}

/// Mask preparation for the operator comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareOptions {
    pub hsv_range: HsvRange,
    /// Applies the stage-3 cleanup before comparing; off by default so the
    /// operators see the raw binarized mask.
    pub clean: bool,
    pub se_size: usize,
    pub min_area: usize,
    pub morph_order: MorphOrder,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            hsv_range: HsvRange::default(),
            clean: false,
            se_size: 3,
            min_area: 50,
            morph_order: MorphOrder::DilateFirst,
        }
    }
}

/// Loads `image`, binarizes it and runs every gradient operator on the mask.
pub fn run_compare(image: impl AsRef<Path>, opts: &CompareOptions) -> Result<OperatorComparison, PipelineError> {
    let image = load_image(image).map_err(PipelineError::Image)?;
    let mut mask = hsv_mask(&image, &opts.hsv_range);
    if opts.clean {
        let se = StructuringElement::square(opts.se_size).map_err(PipelineError::StructuringElement)?;
        mask = clean(&mask, &se, opts.min_area, opts.morph_order);
    }
    Ok(compare_operators(&mask))
}
