//! Decoding map fragments and writing binary diagnostic rasters.

use std::io;
use std::path::{Path, PathBuf};

use image::{GrayImage, ImageError, ImageFormat, ImageReader, Luma};
use shoreline_core::{Mask, RasterImage};

#[derive(Debug, thiserror::Error)]
pub enum RasterIoError {
    #[error("{}: file not found", .0.display())]
    FileNotFound(PathBuf),
    #[error("{}: unsupported image format", .0.display())]
    UnsupportedFormat(PathBuf),
    #[error("{}: corrupt image: {reason}", .path.display())]
    CorruptImage { path: PathBuf, reason: String },
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: io::Error },
}

fn classify(path: &Path, err: ImageError) -> RasterIoError {
    match err {
        ImageError::Unsupported(_) => RasterIoError::UnsupportedFormat(path.to_owned()),
        ImageError::IoError(e) if e.kind() == io::ErrorKind::NotFound => RasterIoError::FileNotFound(path.to_owned()),
        ImageError::IoError(e) if e.kind() != io::ErrorKind::UnexpectedEof => {
            RasterIoError::Io { path: path.to_owned(), source: e }
        }
        other => RasterIoError::CorruptImage { path: path.to_owned(), reason: other.to_string() },
    }
}

/// Loads a PNG/JPEG/BMP/TIFF raster. 8-bit channels map to `v / 255`; any
/// alpha channel is dropped.
pub fn load_image(path: impl AsRef<Path>) -> Result<RasterImage, RasterIoError> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|e| match e.kind() {
            io::ErrorKind::NotFound => RasterIoError::FileNotFound(path.to_owned()),
            _ => RasterIoError::Io { path: path.to_owned(), source: e },
        })?
        .with_guessed_format()
        .map_err(|e| RasterIoError::Io { path: path.to_owned(), source: e })?;
    if reader.format().is_none() {
        return Err(RasterIoError::UnsupportedFormat(path.to_owned()));
    }
    let rgb = reader.decode().map_err(|e| classify(path, e))?.to_rgb8();
    let (w, h) = rgb.dimensions();
    RasterImage::from_rgb8(w as usize, h as usize, rgb.as_raw())
        .map_err(|e| RasterIoError::CorruptImage { path: path.to_owned(), reason: e.to_string() })
}

fn mask_to_gray(mask: &Mask) -> GrayImage {
    GrayImage::from_fn(mask.width() as u32, mask.height() as u32, |x, y| {
        Luma([if mask.get(x as usize, y as usize) { 255 } else { 0 }])
    })
}

/// Writes `mask` as an 8-bit grayscale PNG (0 -> black, 1 -> white),
/// whatever the file extension.
pub fn save_mask(mask: &Mask, path: impl AsRef<Path>) -> Result<(), RasterIoError> {
    let path = path.as_ref();
    mask_to_gray(mask).save_with_format(path, ImageFormat::Png).map_err(|e| match e {
        ImageError::IoError(source) => RasterIoError::Io { path: path.to_owned(), source },
        other => RasterIoError::Io { path: path.to_owned(), source: io::Error::other(other) },
    })
}

/// Reads a grayscale raster back as a mask; any nonzero level is 1.
pub fn load_mask(path: impl AsRef<Path>) -> Result<Mask, RasterIoError> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|e| match e.kind() {
            io::ErrorKind::NotFound => RasterIoError::FileNotFound(path.to_owned()),
            _ => RasterIoError::Io { path: path.to_owned(), source: e },
        })?
        .with_guessed_format()
        .map_err(|e| RasterIoError::Io { path: path.to_owned(), source: e })?;
    let gray = reader.decode().map_err(|e| classify(path, e))?.to_luma8();
    let (w, h) = gray.dimensions();
    let bits = gray.as_raw().iter().map(|&v| u8::from(v != 0)).collect();
    Mask::new(w as usize, h as usize, bits)
        .map_err(|e| RasterIoError::CorruptImage { path: path.to_owned(), reason: e.to_string() })
}
