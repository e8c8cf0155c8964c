//! Filesystem side of the water-boundary extractor.
//!
//! [`run_pipeline`] drives the whole chain from a map fragment and its
//! binding file to a [`PipelineReport`]; [`write_outputs`] renders that
//! report as `regions.csv`, `contours.csv` and `contours.txt`. The
//! algorithms themselves live in [`shoreline_core`].

pub mod config;
pub mod output;
pub mod pipeline;
pub mod raster_io;

pub use config::{ConfigError, PipelineConfig};
pub use output::{write_comparison, write_diagnostics, write_outputs};
pub use pipeline::{run_compare, run_pipeline, CompareOptions, PipelineError, PipelineReport, Stage, StageTiming};
pub use raster_io::{load_image, load_mask, save_mask, RasterIoError};
pub use shoreline_core as core;
