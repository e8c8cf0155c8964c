//! In-memory raster types shared by every stage.

use alloc::vec;
use alloc::vec::Vec;

/// Construction errors for rasters and masks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RasterError {
    #[error("raster dimensions must be at least 1x1, got {width}x{height}")]
    EmptyDimensions { width: usize, height: usize },
    #[error("expected {expected} elements for the given dimensions, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("channel value {value} at index {index} lies outside [0, 1]")]
    ChannelOutOfRange { index: usize, value: f64 },
    #[error("mask element {value} at index {index} is not 0 or 1")]
    NotBinary { index: usize, value: u8 },
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<(), RasterError> {
    if width == 0 || height == 0 {
        return Err(RasterError::EmptyDimensions { width, height });
    }
    let expected = width * height;
    if len != expected {
        return Err(RasterError::LengthMismatch { expected, actual: len });
    }
    Ok(())
}

/// A width x height row-major grid of arbitrary cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T> Grid<T> {
    pub fn from_vec(width: usize, height: usize, data: Vec<T>) -> Result<Self, RasterError> {
        check_dims(width, height, data.len())?;
        Ok(Self { width, height, data })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> &T {
        &self.data[y * self.width + x]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Grid<U> {
        Grid {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Grid<T> {
    pub fn filled(width: usize, height: usize, value: T) -> Self {
        Self { width, height, data: vec![value; width * height] }
    }
}

/// One RGB pixel with channels in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl Rgb {
    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        Self { r, g, b }
    }

    /// Scales 8-bit channels by `v / 255`.
    pub fn from_u8(r: u8, g: u8, b: u8) -> Self {
        Self::new(f64::from(r) / 255.0, f64::from(g) / 255.0, f64::from(b) / 255.0)
    }
}

/// The pipeline input: an opaque RGB raster, channels normalized to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    grid: Grid<Rgb>,
}

impl RasterImage {
    pub fn new(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self, RasterError> {
        check_dims(width, height, pixels.len())?;
        for (i, p) in pixels.iter().enumerate() {
            for value in [p.r, p.g, p.b] {
                if !(0.0..=1.0).contains(&value) {
                    return Err(RasterError::ChannelOutOfRange { index: i, value });
                }
            }
        }
        Ok(Self { grid: Grid { width, height, data: pixels } })
    }

    /// Builds an image from packed 8-bit RGB triples.
    pub fn from_rgb8(width: usize, height: usize, bytes: &[u8]) -> Result<Self, RasterError> {
        check_dims(width, height, bytes.len() / 3)?;
        if !bytes.len().is_multiple_of(3) {
            return Err(RasterError::LengthMismatch { expected: width * height * 3, actual: bytes.len() });
        }
        let pixels = bytes.chunks_exact(3).map(|c| Rgb::from_u8(c[0], c[1], c[2])).collect();
        Ok(Self { grid: Grid { width, height, data: pixels } })
    }

    pub fn width(&self) -> usize {
        self.grid.width
    }

    pub fn height(&self) -> usize {
        self.grid.height
    }

    pub fn pixel(&self, x: usize, y: usize) -> Rgb {
        *self.grid.get(x, y)
    }

    pub fn pixels(&self) -> &[Rgb] {
        self.grid.as_slice()
    }
}

/// A binary raster. Every element is exactly 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mask {
    width: usize,
    height: usize,
    bits: Vec<u8>,
}

impl Mask {
    pub fn new(width: usize, height: usize, bits: Vec<u8>) -> Result<Self, RasterError> {
        check_dims(width, height, bits.len())?;
        if let Some((index, &value)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(RasterError::NotBinary { index, value });
        }
        Ok(Self { width, height, bits })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self { width, height, bits: vec![0; width * height] }
    }

    pub fn ones(width: usize, height: usize) -> Self {
        Self { width, height, bits: vec![1; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                bits.push(u8::from(f(x, y)));
            }
        }
        Self { width, height, bits }
    }

    /// Wraps bits already known to be 0/1.
    pub(crate) fn from_bits_unchecked(width: usize, height: usize, bits: Vec<u8>) -> Self {
        debug_assert!(bits.len() == width * height && bits.iter().all(|&b| b <= 1));
        Self { width, height, bits }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x] != 0
    }

    /// Bounds-checked read; anything outside the frame is 0.
    pub fn get_padded(&self, x: isize, y: isize) -> u8 {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            0
        } else {
            self.bits[y as usize * self.width + x as usize]
        }
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = u8::from(value);
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    pub fn complement(&self) -> Self {
        Self::from_bits_unchecked(self.width, self.height, self.bits.iter().map(|&b| 1 - b).collect())
    }

    /// True when every 1 in `self` is also 1 in `other`. Dimensions must match.
    pub fn is_subset_of(&self, other: &Mask) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a <= b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rgb8_scaling_is_exact_division() {
        let img = RasterImage::from_rgb8(2, 1, &[255, 0, 0, 51, 102, 204]).unwrap();
        assert_eq!(img.pixel(0, 0), Rgb::new(1.0, 0.0, 0.0));
        assert_eq!(img.pixel(1, 0), Rgb::new(51.0 / 255.0, 102.0 / 255.0, 204.0 / 255.0));
    }

    #[test]
    fn rejects_bad_dimensions_and_values() {
        assert_eq!(
            RasterImage::new(0, 1, Vec::new()),
            Err(RasterError::EmptyDimensions { width: 0, height: 1 })
        );
        assert!(matches!(
            RasterImage::new(1, 1, alloc::vec![Rgb::new(1.5, 0.0, 0.0)]),
            Err(RasterError::ChannelOutOfRange { .. })
        ));
        assert!(matches!(Mask::new(2, 2, alloc::vec![0, 1, 2, 0]), Err(RasterError::NotBinary { index: 2, value: 2 })));
        assert!(matches!(Mask::new(2, 2, alloc::vec![0, 1]), Err(RasterError::LengthMismatch { .. })));
    }

    #[test]
    fn padded_reads_are_zero_outside() {
        let m = Mask::ones(2, 2);
        assert_eq!(m.get_padded(-1, 0), 0);
        assert_eq!(m.get_padded(0, 2), 0);
        assert_eq!(m.get_padded(1, 1), 1);
    }
}
