//! Pure algorithms for extracting water-body boundaries from map rasters.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. Images are
//! handed in already decoded as [`RasterImage`]; everything downstream is a
//! function from in-memory grids to in-memory grids:
//!
//! ```text
//! RasterImage -> hsv_mask -> clean -> trace_contours -> region_stats
//!                                  \-> gradient -> edge_mask (diagnostic)
//! binding text -> parse_binding -> division_values -> contour_to_gps
//! ```
//!
//! File formats, the pipeline driver and the CLI live in the `shoreline`
//! crate.
#![no_std]

extern crate alloc;

pub mod colorspace;
pub mod contour;
pub mod edges;
pub mod georef;
pub mod metrics;
pub mod morphology;
pub mod raster;

pub use colorspace::{hsv_mask, rgb_to_hsv, HsvPixel, HsvRange, HsvRangeError};
pub use contour::{trace_contours, Contour, Point};
pub use edges::{
    compare_operators, convolve3, direction, edge_mask, gradient, magnitude, GradientField,
    Kernel3x3, OperatorComparison, OperatorKind, OperatorMetrics,
};
pub use georef::{
    contour_to_gps, division_values, parse_binding, pixel_to_gps, ControlPoint, GeoError,
    GeoPoint, GeoTransform,
};
pub use metrics::{region_stats, to_kilometers, AreaMode, MetricsError, RegionPixelStats, RegionStats};
pub use morphology::{
    clean, dilate, drop_small, erode, label_components, LabelMap, MorphOrder, StructuringElement,
    StructuringElementError,
};
pub use raster::{Grid, Mask, RasterError, RasterImage, Rgb};
