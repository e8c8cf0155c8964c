//! RGB to HSV conversion and range-based binarization.

use crate::raster::{Mask, RasterImage, Rgb};

/// Hue in degrees `[0, 360)`, saturation and value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsvPixel {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

impl HsvPixel {
    /// Hue as a fraction of the full circle, the scale [`HsvRange`] uses.
    pub fn hue_fraction(&self) -> f64 {
        self.h / 360.0
    }
}

/// Converts one RGB pixel to HSV.
///
/// When all channels are equal the hue is undefined; it is reported as 0
/// (saturation is 0 there, so no range test depends on it).
pub fn rgb_to_hsv(r: f64, g: f64, b: f64) -> HsvPixel {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let chroma = max - min;

    let h = if chroma == 0.0 {
        0.0
    } else if max == r {
        let h = 60.0 * (g - b) / chroma;
        if g >= b {
            h
        } else {
            h + 360.0
        }
    } else if max == g {
        60.0 * (b - r) / chroma + 120.0
    } else {
        60.0 * (r - g) / chroma + 240.0
    };
    // 60 * tiny negative + 360 can round up to 360.
    let h = if h >= 360.0 { h - 360.0 } else { h };

    let s = if max == 0.0 { 0.0 } else { 1.0 - min / max };
    HsvPixel { h, s, v: max }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HsvRangeError {
    #[error("{channel} bound {value} lies outside [0, 1]")]
    OutOfUnitInterval { channel: &'static str, value: f64 },
    #[error("{channel} range is inverted: lo {lo} > hi {hi}")]
    Inverted { channel: &'static str, lo: f64, hi: f64 },
}

/// Closed intervals on each HSV channel. Hue is expressed as a fraction of
/// the full circle; wraparound ranges are not supported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsvRange {
    h: (f64, f64),
    s: (f64, f64),
    v: (f64, f64),
}

impl Default for HsvRange {
    /// The blue water band: hue `[0.399, 0.78]`, saturation `[0.32, 1]`,
    /// value `[0.2, 1]`.
    fn default() -> Self {
        Self { h: (0.399, 0.78), s: (0.32, 1.0), v: (0.2, 1.0) }
    }
}

impl HsvRange {
    pub fn new(
        h_lo: f64,
        h_hi: f64,
        s_lo: f64,
        s_hi: f64,
        v_lo: f64,
        v_hi: f64,
    ) -> Result<Self, HsvRangeError> {
        for (channel, lo, hi) in [("hue", h_lo, h_hi), ("saturation", s_lo, s_hi), ("value", v_lo, v_hi)] {
            for value in [lo, hi] {
                if !(0.0..=1.0).contains(&value) {
                    return Err(HsvRangeError::OutOfUnitInterval { channel, value });
                }
            }
            if lo > hi {
                return Err(HsvRangeError::Inverted { channel, lo, hi });
            }
        }
        Ok(Self { h: (h_lo, h_hi), s: (s_lo, s_hi), v: (v_lo, v_hi) })
    }

    /// `[h_lo, h_hi, s_lo, s_hi, v_lo, v_hi]`
    pub fn bounds(&self) -> [f64; 6] {
        [self.h.0, self.h.1, self.s.0, self.s.1, self.v.0, self.v.1]
    }

    pub fn contains(&self, px: HsvPixel) -> bool {
        let hue = px.hue_fraction();
        (self.h.0..=self.h.1).contains(&hue)
            && (self.s.0..=self.s.1).contains(&px.s)
            && (self.v.0..=self.v.1).contains(&px.v)
    }

    pub fn contains_rgb(&self, px: Rgb) -> bool {
        self.contains(rgb_to_hsv(px.r, px.g, px.b))
    }
}

/// Marks every pixel whose HSV coordinates fall inside `range`.
pub fn hsv_mask(img: &RasterImage, range: &HsvRange) -> Mask {
    let bits = img.pixels().iter().map(|&p| u8::from(range.contains_rgb(p))).collect();
    Mask::from_bits_unchecked(img.width(), img.height(), bits)
}
