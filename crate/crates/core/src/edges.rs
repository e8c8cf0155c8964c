//! Linear 3x3 filtering and first-derivative edge operators.
//!
//! Coordinates: `x` runs along columns, `y` along rows (downward). A kernel
//! weight `w(i, j)` multiplies the pixel at `(x + i, y + j)`, and everything
//! outside the frame reads as 0.
//!
//! In the labeled neighborhood
//!
//! ```text
//! z1 z4 z7        z1 = f(x-1, y-1)  z2 = f(x-1, y)  z3 = f(x-1, y+1)
//! z2 z5 z8        z4 = f(x,   y-1)  z5 = f(x,   y)  z6 = f(x,   y+1)
//! z3 z6 z9        z7 = f(x+1, y-1)  z8 = f(x+1, y)  z9 = f(x+1, y+1)
//! ```
//!
//! the operators are
//!
//! * Sobel: `gx = (z7 + 2 z8 + z9) - (z1 + 2 z2 + z3)`, `gy = (z3 + 2 z6 + z9) - (z1 + 2 z4 + z7)`
//! * Prewitt: the same with unit weights
//! * Roberts: `gx = z9 - z5`, `gy = z8 - z6`, a 2x2 cross anchored at its top-left cell
//!
//! The Sobel `gy` uses `z7` as the last term, matching the standard column
//! mask rather than the `z5` variant that sometimes appears in print.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::raster::{Grid, Mask};

/// 3x3 integer weights, `rows[j + 1][i + 1] = w(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Kernel3x3 {
    rows: [[i32; 3]; 3],
}

impl Kernel3x3 {
    /// Weights as they appear on screen: outer index is the row offset `j`.
    pub const fn from_rows(rows: [[i32; 3]; 3]) -> Self {
        Self { rows }
    }

    pub const fn identity() -> Self {
        Self::from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    }

    /// `w(i, j)` for `i, j` in `-1..=1`.
    pub fn weight(&self, i: isize, j: isize) -> i32 {
        self.rows[(j + 1) as usize][(i + 1) as usize]
    }

    pub fn rows(&self) -> [[i32; 3]; 3] {
        self.rows
    }

    pub fn sum(&self) -> i32 {
        self.rows.iter().flatten().sum()
    }
}

/// Sum-of-products response of `k` centered on every pixel of `m`.
pub fn convolve3(m: &Mask, k: &Kernel3x3) -> Grid<i32> {
    let (w, h) = (m.width(), m.height());
    let taps: Vec<(isize, isize, i32)> = (-1..=1)
        .flat_map(|j| (-1..=1).map(move |i| (i, j)))
        .map(|(i, j)| (i, j, k.weight(i, j)))
        .filter(|&(_, _, wt)| wt != 0)
        .collect();
    let bits = m.bits();
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        let interior_row = y >= 1 && y + 1 < h;
        for x in 0..w {
            let mut acc = 0i32;
            if interior_row && x >= 1 && x + 1 < w {
                for &(i, j, wt) in &taps {
                    let idx = (y as isize + j) as usize * w + (x as isize + i) as usize;
                    acc += wt * i32::from(bits[idx]);
                }
            } else {
                for &(i, j, wt) in &taps {
                    acc += wt * i32::from(m.get_padded(x as isize + i, y as isize + j));
                }
            }
            out.push(acc);
        }
    }
    Grid::from_vec(w, h, out).expect("same dimensions as mask")
}

/// Gradient operator selection. Sobel is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OperatorKind {
    #[default]
    Sobel,
    Roberts,
    Prewitt,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 3] = [OperatorKind::Sobel, OperatorKind::Roberts, OperatorKind::Prewitt];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Sobel => "sobel",
            OperatorKind::Roberts => "roberts",
            OperatorKind::Prewitt => "prewitt",
        }
    }

    /// `(gx, gy)` kernels. Roberts sits in the lower-right 2x2 of the 3x3 so
    /// its anchor is the top-left cell of the cross.
    pub fn kernels(self) -> (Kernel3x3, Kernel3x3) {
        match self {
            OperatorKind::Sobel => (
                Kernel3x3::from_rows([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]]),
                Kernel3x3::from_rows([[-1, -2, -1], [0, 0, 0], [1, 2, 1]]),
            ),
            OperatorKind::Prewitt => (
                Kernel3x3::from_rows([[-1, 0, 1], [-1, 0, 1], [-1, 0, 1]]),
                Kernel3x3::from_rows([[-1, -1, -1], [0, 0, 0], [1, 1, 1]]),
            ),
            OperatorKind::Roberts => (
                Kernel3x3::from_rows([[0, 0, 0], [0, -1, 0], [0, 0, 1]]),
                Kernel3x3::from_rows([[0, 0, 0], [0, 0, 1], [0, -1, 0]]),
            ),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown operator `{0}` (expected sobel, roberts or prewitt)")]
pub struct UnknownOperator(pub alloc::string::String);

impl FromStr for OperatorKind {
    type Err = UnknownOperator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sobel" => Ok(OperatorKind::Sobel),
            "roberts" => Ok(OperatorKind::Roberts),
            "prewitt" => Ok(OperatorKind::Prewitt),
            _ => Err(UnknownOperator(s.into())),
        }
    }
}

/// Per-pixel `(gx, gy)` responses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientField {
    gx: Grid<i32>,
    gy: Grid<i32>,
}

impl GradientField {
    pub fn new(gx: Grid<i32>, gy: Grid<i32>) -> Option<Self> {
        (gx.width() == gy.width() && gx.height() == gy.height()).then_some(Self { gx, gy })
    }

    pub fn width(&self) -> usize {
        self.gx.width()
    }

    pub fn height(&self) -> usize {
        self.gx.height()
    }

    pub fn gx(&self) -> &Grid<i32> {
        &self.gx
    }

    pub fn gy(&self) -> &Grid<i32> {
        &self.gy
    }

    pub fn at(&self, x: usize, y: usize) -> (i32, i32) {
        (*self.gx.get(x, y), *self.gy.get(x, y))
    }

    fn pairs(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.gx.as_slice().iter().copied().zip(self.gy.as_slice().iter().copied())
    }
}

pub fn gradient(m: &Mask, op: OperatorKind) -> GradientField {
    let (kx, ky) = op.kernels();
    GradientField { gx: convolve3(m, &kx), gy: convolve3(m, &ky) }
}

fn hypot(gx: i32, gy: i32) -> f64 {
    let (gx, gy) = (f64::from(gx), f64::from(gy));
    libm::sqrt(gx * gx + gy * gy)
}

/// `sqrt(gx^2 + gy^2)` per pixel.
pub fn magnitude(f: &GradientField) -> Grid<f64> {
    let data = f.pairs().map(|(gx, gy)| hypot(gx, gy)).collect();
    Grid::from_vec(f.width(), f.height(), data).expect("same dimensions")
}

/// Quadrant-resolved gradient angle in degrees, `(-180, 180]`; `None` where
/// the gradient vanishes.
pub fn direction(f: &GradientField) -> Grid<Option<f64>> {
    let data = f
        .pairs()
        .map(|(gx, gy)| {
            ((gx, gy) != (0, 0)).then(|| libm::atan2(f64::from(gy), f64::from(gx)).to_degrees())
        })
        .collect();
    Grid::from_vec(f.width(), f.height(), data).expect("same dimensions")
}

/// 1 where the gradient magnitude strictly exceeds `threshold`.
pub fn edge_mask(f: &GradientField, threshold: f64) -> Mask {
    let bits = f.pairs().map(|(gx, gy)| u8::from(hypot(gx, gy) > threshold)).collect();
    Mask::from_bits_unchecked(f.width(), f.height(), bits)
}

/// One row of an operator comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMetrics {
    pub kind: OperatorKind,
    /// Pixels with nonzero gradient.
    pub edge_pixels: usize,
    /// Mean magnitude over `edge_pixels`.
    pub mean_magnitude: f64,
    /// Edge pixels at least one pixel away from the frame.
    pub interior_edge_pixels: usize,
    pub interior_mean_magnitude: f64,
    pub interior_mean_abs_gx: f64,
    pub interior_mean_abs_gy: f64,
    /// Threshold-0 edge raster.
    pub edges: Mask,
}

/// Side-by-side metrics for every operator, in [`OperatorKind::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorComparison {
    pub entries: Vec<OperatorMetrics>,
}

impl OperatorComparison {
    pub fn get(&self, kind: OperatorKind) -> Option<&OperatorMetrics> {
        self.entries.iter().find(|e| e.kind == kind)
    }
}

fn mean(sum: f64, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

fn measure(m: &Mask, kind: OperatorKind) -> OperatorMetrics {
    let field = gradient(m, kind);
    let (w, h) = (field.width(), field.height());
    let (mut n, mut sum) = (0usize, 0.0);
    let (mut ni, mut sum_i, mut sum_gx, mut sum_gy) = (0usize, 0.0, 0.0, 0.0);
    for y in 0..h {
        for x in 0..w {
            let (gx, gy) = field.at(x, y);
            if (gx, gy) == (0, 0) {
                continue;
            }
            let mag = hypot(gx, gy);
            n += 1;
            sum += mag;
            if x >= 1 && y >= 1 && x + 1 < w && y + 1 < h {
                ni += 1;
                sum_i += mag;
                sum_gx += f64::from(gx.abs());
                sum_gy += f64::from(gy.abs());
            }
        }
    }
    OperatorMetrics {
        kind,
        edge_pixels: n,
        mean_magnitude: mean(sum, n),
        interior_edge_pixels: ni,
        interior_mean_magnitude: mean(sum_i, ni),
        interior_mean_abs_gx: mean(sum_gx, ni),
        interior_mean_abs_gy: mean(sum_gy, ni),
        edges: edge_mask(&field, 0.0),
    }
}

/// Runs all three operators on `m` at threshold 0.
pub fn compare_operators(m: &Mask) -> OperatorComparison {
    OperatorComparison { entries: OperatorKind::ALL.iter().map(|&k| measure(m, k)).collect() }
}
