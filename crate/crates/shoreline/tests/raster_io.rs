use image::{Rgb, RgbImage, Rgba, RgbaImage};
use proptest::prelude::*;
use shoreline::core::Mask;
use shoreline::{load_image, load_mask, save_mask, RasterIoError};

#[test]
fn red_png_scales_to_unit_channels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("red.png");
    RgbImage::from_pixel(2, 2, Rgb([255, 0, 0])).save(&path).unwrap();
    let img = load_image(&path).unwrap();
    assert_eq!((img.width(), img.height()), (2, 2));
    assert!(img.pixels().iter().all(|p| (p.r, p.g, p.b) == (1.0, 0.0, 0.0)));
}

#[test]
fn alpha_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rgba.png");
    RgbaImage::from_pixel(3, 1, Rgba([0, 51, 255, 0])).save(&path).unwrap();
    let img = load_image(&path).unwrap();
    assert_eq!(img.pixel(2, 0).g, 51.0 / 255.0);
    assert_eq!(img.pixel(2, 0).b, 1.0);
}

#[test]
fn jpeg_loads_within_unit_range() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.jpg");
    RgbImage::from_fn(16, 16, |x, y| Rgb([(x * 16) as u8, (y * 16) as u8, 200])).save(&path).unwrap();
    let img = load_image(&path).unwrap();
    assert_eq!(img.width(), 16);
    assert!(img.pixels().iter().all(|p| [p.r, p.g, p.b].iter().all(|c| (0.0..=1.0).contains(c))));
}

#[test]
fn missing_file() {
    let err = load_image("/nonexistent/dir/map.png").unwrap_err();
    assert!(matches!(err, RasterIoError::FileNotFound(_)), "{err:?}");
}

#[test]
fn truncated_file_is_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("full.png");
    let sample = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/sample_fragment.png");
    let bytes = std::fs::read(sample).unwrap();
    std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
    let err = load_image(&path).unwrap_err();
    assert!(matches!(err, RasterIoError::CorruptImage { .. }), "{err:?}");
}

#[test]
fn text_file_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("notes.txt");
    std::fs::write(&path, "POINT 0 0 44 36 33 30\n").unwrap();
    let err = load_image(&path).unwrap_err();
    assert!(matches!(err, RasterIoError::UnsupportedFormat(_)), "{err:?}");
}

#[test]
fn saved_masks_are_black_and_white() {
    let dir = tempfile::tempdir().unwrap();
    for (mask, level) in [(Mask::zeros(4, 4), 0u8), (Mask::ones(4, 4), 255u8)] {
        let path = dir.path().join(format!("m{level}.png"));
        save_mask(&mask, &path).unwrap();
        let gray = image::open(&path).unwrap();
        assert_eq!(gray.color(), image::ColorType::L8);
        let gray = gray.to_luma8();
        assert_eq!(gray.dimensions(), (4, 4));
        assert!(gray.pixels().all(|p| p.0[0] == level));
    }
}

#[test]
fn unwritable_path() {
    let err = save_mask(&Mask::zeros(2, 2), "/nonexistent/dir/m.png").unwrap_err();
    assert!(matches!(err, RasterIoError::Io { .. }), "{err:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn mask_round_trip(bits in prop::collection::vec(0u8..=1, 256)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.png");
        let mask = Mask::new(16, 16, bits).unwrap();
        save_mask(&mask, &path).unwrap();
        prop_assert_eq!(load_mask(&path).unwrap(), mask);
    }
}
