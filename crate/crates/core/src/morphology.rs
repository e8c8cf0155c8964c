//! Binary dilation/erosion, small-region removal and 8-connected labeling.
//!
//! Both operators read outside the image as 0.

use alloc::vec;
use alloc::vec::Vec;

use crate::raster::{Grid, Mask};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructuringElementError {
    #[error("structuring element dimensions must be odd and >= 1, got {width}x{height}")]
    EvenOrEmpty { width: usize, height: usize },
    #[error("expected {expected} structuring element bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("structuring element anchor (center) bit must be set")]
    AnchorUnset,
}

/// Odd-sized binary stencil anchored at its center cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    width: usize,
    height: usize,
    bits: Vec<u8>,
    /// (dx, dy) of every set cell relative to the anchor.
    offsets: Vec<(isize, isize)>,
}

impl StructuringElement {
    pub fn new(width: usize, height: usize, bits: Vec<u8>) -> Result<Self, StructuringElementError> {
        if width == 0 || height == 0 || width.is_multiple_of(2) || height.is_multiple_of(2) {
            return Err(StructuringElementError::EvenOrEmpty { width, height });
        }
        if bits.len() != width * height {
            return Err(StructuringElementError::LengthMismatch { expected: width * height, actual: bits.len() });
        }
        let (cx, cy) = (width / 2, height / 2);
        if bits[cy * width + cx] == 0 {
            return Err(StructuringElementError::AnchorUnset);
        }
        let bits: Vec<u8> = bits.into_iter().map(|b| u8::from(b != 0)).collect();
        let mut offsets = Vec::new();
        for y in 0..height {
            for x in 0..width {
                if bits[y * width + x] != 0 {
                    offsets.push((x as isize - cx as isize, y as isize - cy as isize));
                }
            }
        }
        Ok(Self { width, height, bits, offsets })
    }

    /// Full `size x size` square.
    pub fn square(size: usize) -> Result<Self, StructuringElementError> {
        Self::new(size, size, vec![1; size * size])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Largest offset from the anchor along either axis.
    pub fn radius(&self) -> usize {
        (self.width / 2).max(self.height / 2)
    }

    /// Point reflection through the anchor.
    pub fn reflect(&self) -> Self {
        let bits = self.bits.iter().rev().copied().collect();
        Self::new(self.width, self.height, bits).expect("reflection keeps the anchor")
    }

    fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b == 1)
    }
}

impl Default for StructuringElement {
    fn default() -> Self {
        Self::square(3).expect("3x3 is valid")
    }
}

/// Which morphological operator runs first during cleanup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MorphOrder {
    /// Closing: dilate, then erode.
    #[default]
    DilateFirst,
    /// Opening: erode, then dilate.
    ErodeFirst,
}

#[derive(Clone, Copy)]
enum Reduce {
    Max,
    Min,
}

/// `out(p) = reduce over offsets o of m(p + sign * o)`, zero outside.
fn reduce(m: &Mask, se: &StructuringElement, sign: isize, op: Reduce) -> Mask {
    if se.is_full() {
        reduce_separable(m, se.width / 2, se.height / 2, op)
    } else {
        reduce_generic(m, se, sign, op)
    }
}

fn reduce_generic(m: &Mask, se: &StructuringElement, sign: isize, op: Reduce) -> Mask {
    let (w, h) = (m.width(), m.height());
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let mut acc = match op {
                Reduce::Max => 0,
                Reduce::Min => 1,
            };
            for &(dx, dy) in &se.offsets {
                let v = m.get_padded(x + sign * dx, y + sign * dy);
                match op {
                    Reduce::Max if v == 1 => {
                        acc = 1;
                        break;
                    }
                    Reduce::Min if v == 0 => {
                        acc = 0;
                        break;
                    }
                    _ => {}
                }
            }
            out.push(acc);
        }
    }
    Mask::from_bits_unchecked(w, h, out)
}

/// Rectangular SEs decompose into a horizontal then a vertical pass.
fn reduce_separable(m: &Mask, rx: usize, ry: usize, op: Reduce) -> Mask {
    let (w, h) = (m.width(), m.height());
    let combine = |a: u8, b: u8| match op {
        Reduce::Max => a | b,
        Reduce::Min => a & b,
    };
    let init = match op {
        Reduce::Max => 0u8,
        Reduce::Min => 1u8,
    };
    let src = m.bits();
    let mut rows = vec![0u8; w * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = init;
            for xx in x as isize - rx as isize..=(x + rx) as isize {
                let v = if xx < 0 || xx as usize >= w { 0 } else { row[xx as usize] };
                acc = combine(acc, v);
            }
            rows[y * w + x] = acc;
        }
    }
    let mut out = vec![0u8; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = init;
            for yy in y as isize - ry as isize..=(y + ry) as isize {
                let v = if yy < 0 || yy as usize >= h { 0 } else { rows[yy as usize * w + x] };
                acc = combine(acc, v);
            }
            out[y * w + x] = acc;
        }
    }
    Mask::from_bits_unchecked(w, h, out)
}

/// Local maximum over the (reflected) SE neighborhood: `out(p) = max m(p - b)`.
pub fn dilate(m: &Mask, se: &StructuringElement) -> Mask {
    reduce(m, se, -1, Reduce::Max)
}

/// Local minimum: `out(p) = 1` iff the SE translated to `p` fits inside the 1-set.
pub fn erode(m: &Mask, se: &StructuringElement) -> Mask {
    reduce(m, se, 1, Reduce::Min)
}

/// Zeroes every 8-connected component with fewer than `min_area` pixels.
pub fn drop_small(m: &Mask, min_area: usize) -> Mask {
    if min_area == 0 {
        return m.clone();
    }
    let labels = label_components(m);
    let areas = labels.areas();
    let bits = labels
        .labels()
        .as_slice()
        .iter()
        .map(|&l| u8::from(l != 0 && areas[l as usize - 1] >= min_area))
        .collect();
    Mask::from_bits_unchecked(m.width(), m.height(), bits)
}

/// Closing (or opening, per `order`) followed by small-region removal.
pub fn clean(m: &Mask, se: &StructuringElement, min_area: usize, order: MorphOrder) -> Mask {
    let smoothed = match order {
        MorphOrder::DilateFirst => erode(&dilate(m, se), se),
        MorphOrder::ErodeFirst => dilate(&erode(m, se), se),
    };
    drop_small(&smoothed, min_area)
}

/// 8-connected component labels; 0 is background.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    labels: Grid<u32>,
    region_count: usize,
}

impl LabelMap {
    pub fn width(&self) -> usize {
        self.labels.width()
    }

    pub fn height(&self) -> usize {
        self.labels.height()
    }

    pub fn labels(&self) -> &Grid<u32> {
        &self.labels
    }

    pub fn label(&self, x: usize, y: usize) -> u32 {
        *self.labels.get(x, y)
    }

    pub fn region_count(&self) -> usize {
        self.region_count
    }

    /// Pixel count per region; index `i` holds label `i + 1`.
    pub fn areas(&self) -> Vec<usize> {
        let mut areas = vec![0usize; self.region_count];
        for &l in self.labels.as_slice() {
            if l != 0 {
                areas[l as usize - 1] += 1;
            }
        }
        areas
    }

    /// Mask of a single region.
    pub fn region_mask(&self, label: u32) -> Mask {
        let bits = self.labels.as_slice().iter().map(|&l| u8::from(l == label)).collect();
        Mask::from_bits_unchecked(self.width(), self.height(), bits)
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let next = parent[x as usize];
        parent[x as usize] = parent[next as usize];
        x = next;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        // keep the smaller provisional label as root so first-encounter order is stable
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi as usize] = lo;
    }
}

/// Two-pass union-find labeling. Labels are `1..=region_count`, assigned in
/// raster-scan order of each component's first pixel.
pub fn label_components(m: &Mask) -> LabelMap {
    let (w, h) = (m.width(), m.height());
    let bits = m.bits();
    let mut prov = vec![0u32; w * h];
    // parent[0] is the unused background slot
    let mut parent: Vec<u32> = vec![0];

    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if bits[i] == 0 {
                continue;
            }
            // already-visited 8-neighbors: W, NW, N, NE
            let mut current = 0u32;
            let mut visit = |n: u32, parent: &mut Vec<u32>| {
                if n == 0 {
                    return;
                }
                if current == 0 {
                    current = n;
                } else {
                    union(parent, current, n);
                }
            };
            if x > 0 {
                visit(prov[i - 1], &mut parent);
            }
            if y > 0 {
                let up = i - w;
                if x > 0 {
                    visit(prov[up - 1], &mut parent);
                }
                visit(prov[up], &mut parent);
                if x + 1 < w {
                    visit(prov[up + 1], &mut parent);
                }
            }
            if current == 0 {
                current = parent.len() as u32;
                parent.push(current);
            }
            prov[i] = current;
        }
    }

    let mut final_label = vec![0u32; parent.len()];
    let mut next = 0u32;
    for l in prov.iter_mut() {
        if *l == 0 {
            continue;
        }
        let root = find(&mut parent, *l) as usize;
        if final_label[root] == 0 {
            next += 1;
            final_label[root] = next;
        }
        *l = final_label[root];
    }

    LabelMap {
        labels: Grid::from_vec(w, h, prov).expect("same dimensions as mask"),
        region_count: next as usize,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(w: usize, h: usize, x0: usize, y0: usize, bw: usize, bh: usize) -> Mask {
        Mask::from_fn(w, h, |x, y| (x0..x0 + bw).contains(&x) && (y0..y0 + bh).contains(&y))
    }

    #[test]
    fn se_validation() {
        assert_eq!(
            StructuringElement::square(2),
            Err(StructuringElementError::EvenOrEmpty { width: 2, height: 2 })
        );
        assert_eq!(
            StructuringElement::new(3, 1, vec![1, 0, 1]),
            Err(StructuringElementError::AnchorUnset)
        );
        assert!(StructuringElement::new(3, 3, vec![1; 4]).is_err());
    }

    #[test]
    fn dilate_single_pixel_to_block() {
        let m = block(5, 5, 2, 2, 1, 1);
        let se = StructuringElement::default();
        assert_eq!(dilate(&m, &se), block(5, 5, 1, 1, 3, 3));
        assert_eq!(dilate(&Mask::zeros(5, 5), &se), Mask::zeros(5, 5));
    }

    #[test]
    fn dilation_merges_nearby_pixels() {
        let m = Mask::from_fn(7, 3, |x, y| y == 1 && (x == 2 || x == 4));
        let d = dilate(&m, &StructuringElement::default());
        assert_eq!(label_components(&m).region_count(), 2);
        assert_eq!(label_components(&d).region_count(), 1);
    }

    #[test]
    fn erode_examples() {
        let se = StructuringElement::default();
        assert_eq!(erode(&block(5, 5, 1, 1, 3, 3), &se), block(5, 5, 2, 2, 1, 1));
        assert_eq!(erode(&block(5, 5, 2, 2, 1, 1), &se), Mask::zeros(5, 5));
        assert_eq!(erode(&Mask::ones(5, 5), &se), block(5, 5, 1, 1, 3, 3));
    }

    #[test]
    fn asymmetric_se_reflects() {
        // anchor plus its east neighbor
        let se = StructuringElement::new(3, 1, vec![0, 1, 1]).unwrap();
        let m = block(5, 1, 2, 0, 1, 1);
        // dilation spreads toward +x: p is set when p - (1,0) is set
        assert_eq!(dilate(&m, &se).bits(), &[0, 0, 1, 1, 0]);
        // erosion keeps p when p and p + (1,0) are set
        let m = block(5, 1, 1, 0, 3, 1);
        assert_eq!(erode(&m, &se).bits(), &[0, 1, 1, 0, 0]);
        assert_eq!(se.reflect().bits(), &[1, 1, 0]);
    }

    #[test]
    fn generic_and_separable_paths_agree() {
        let m = Mask::from_fn(9, 7, |x, y| (x * 7 + y * 3) % 5 < 2);
        for size in [1, 3, 5] {
            let se = StructuringElement::square(size).unwrap();
            for (sign, op) in [(-1, Reduce::Max), (1, Reduce::Min)] {
                assert_eq!(reduce_generic(&m, &se, sign, op), reduce_separable(&m, size / 2, size / 2, op));
            }
        }
    }

    #[test]
    fn clean_examples() {
        let mut m = block(40, 40, 5, 5, 10, 10);
        for (x, y) in [(30, 30), (31, 30), (30, 31)] {
            m.set(x, y, true);
        }
        let se = StructuringElement::default();
        assert_eq!(clean(&m, &se, 50, MorphOrder::DilateFirst), block(40, 40, 5, 5, 10, 10));
        let unit = StructuringElement::square(1).unwrap();
        assert_eq!(clean(&m, &unit, 0, MorphOrder::DilateFirst), m);
        assert_eq!(clean(&Mask::zeros(8, 8), &se, 50, MorphOrder::DilateFirst), Mask::zeros(8, 8));
    }

    #[test]
    fn labeling_basics() {
        assert_eq!(label_components(&Mask::zeros(4, 4)).region_count(), 0);
        let diag = Mask::from_fn(2, 2, |x, y| x == y);
        assert_eq!(label_components(&diag).region_count(), 1);
        // U shape: the right arm is encountered first as a separate provisional label
        let u = Mask::from_fn(5, 3, |x, y| x == 0 || x == 4 || y == 2);
        let l = label_components(&u);
        assert_eq!(l.region_count(), 1);
        assert!(u.bits().iter().zip(l.labels().as_slice()).all(|(&b, &lab)| (b == 1) == (lab == 1)));
    }

    #[test]
    fn labels_follow_first_encounter() {
        // component B starts at row 0 on the right, A at row 1 on the left
        let m = Mask::from_fn(6, 3, |x, y| (x == 5 && y == 0) || (x == 0 && y == 1));
        let l = label_components(&m);
        assert_eq!(l.label(5, 0), 1);
        assert_eq!(l.label(0, 1), 2);
        assert_eq!(l.areas(), vec![1, 1]);
    }
}
