//! Ordered outer boundaries via Moore-neighbor tracing.

use alloc::vec::Vec;

use crate::morphology::{label_components, LabelMap};
use crate::raster::Mask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl Point {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    pub fn is_8_neighbor(self, other: Point) -> bool {
        let dx = self.x.abs_diff(other.x);
        let dy = self.y.abs_diff(other.y);
        dx <= 1 && dy <= 1 && (dx, dy) != (0, 0)
    }
}

/// An ordered pixel boundary. The closing step from the last point back to
/// the first is implied, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl Contour {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Consecutive pairs including the closing step when `closed` and the
    /// contour has more than one point.
    pub fn steps(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.points.len();
        let count = if self.closed && n > 1 { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }
}

/// Clockwise on screen (y grows downward), starting west.
const DIRS: [(isize, isize); 8] = [(-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1)];

/// Scans the neighbors of `c` clockwise, starting just after `back`. Returns
/// the first foreground neighbor and the (background) cell examined before it.
fn next_boundary(
    region: &Region<'_>,
    c: Point,
    back: (isize, isize),
) -> Option<(Point, (isize, isize))> {
    let back_dir = DIRS
        .iter()
        .position(|&(dx, dy)| (c.x as isize + dx, c.y as isize + dy) == back)
        .expect("backtrack cell is an 8-neighbor");
    let mut prev = back;
    for k in 1..=8 {
        let (dx, dy) = DIRS[(back_dir + k) % 8];
        let cell = (c.x as isize + dx, c.y as isize + dy);
        if region.contains(cell) {
            return Some((Point::new(cell.0 as usize, cell.1 as usize), prev));
        }
        prev = cell;
    }
    None
}

/// Foreground test for one label, 0 outside the frame.
struct Region<'a> {
    labels: &'a LabelMap,
    label: u32,
}

impl Region<'_> {
    fn contains(&self, (x, y): (isize, isize)) -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < self.labels.width()
            && (y as usize) < self.labels.height()
            && self.labels.label(x as usize, y as usize) == self.label
    }
}

fn trace_from(region: &Region<'_>, start: Point, area: usize) -> Contour {
    // the start is the topmost-leftmost pixel, so its west cell is background
    let west = (start.x as isize - 1, start.y as isize);
    let Some((first, mut back)) = next_boundary(region, start, west) else {
        return Contour { points: alloc::vec![start], closed: true };
    };
    let mut points = alloc::vec![start, first];
    let mut current = first;
    // every boundary pixel is entered from at most 8 directions
    let limit = 8 * area + 8;
    while points.len() <= limit {
        let (next, prev) = next_boundary(region, current, back).expect("a traced pixel has a foreground neighbor");
        if current == start && next == first {
            points.pop();
            break;
        }
        points.push(next);
        back = prev;
        current = next;
    }
    debug_assert!(points[points.len() - 1].is_8_neighbor(start));
    Contour { points, closed: true }
}

/// One closed outer contour per 8-connected component, in label order. Each
/// trace starts at the component's topmost-then-leftmost pixel and runs
/// clockwise.
pub fn trace_contours(m: &Mask) -> Vec<Contour> {
    let labels = label_components(m);
    let mut starts: Vec<Option<Point>> = alloc::vec![None; labels.region_count()];
    for y in 0..m.height() {
        for x in 0..m.width() {
            let l = labels.label(x, y);
            if l != 0 && starts[l as usize - 1].is_none() {
                starts[l as usize - 1] = Some(Point::new(x, y));
            }
        }
    }
    let areas = labels.areas();
    starts
        .into_iter()
        .enumerate()
        .map(|(i, start)| {
            let region = Region { labels: &labels, label: i as u32 + 1 };
            trace_from(&region, start.expect("every label has a pixel"), areas[i])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pts(list: &[(usize, usize)]) -> Vec<Point> {
        list.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn empty_mask_has_no_contours() {
        assert!(trace_contours(&Mask::zeros(5, 5)).is_empty());
    }

    #[test]
    fn single_pixel() {
        let m = Mask::from_fn(3, 3, |x, y| (x, y) == (1, 1));
        let c = trace_contours(&m);
        assert_eq!(c, vec![Contour { points: pts(&[(1, 1)]), closed: true }]);
        assert_eq!(c[0].steps().count(), 0);
    }

    #[test]
    fn solid_block_clockwise() {
        let m = Mask::from_fn(5, 5, |x, y| (1..4).contains(&x) && (1..4).contains(&y));
        let c = trace_contours(&m);
        assert_eq!(c.len(), 1);
        assert_eq!(
            c[0].points,
            pts(&[(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3), (1, 2)])
        );
        assert_eq!(c[0].steps().count(), 8);
    }

    #[test]
    fn bar_goes_out_and_back() {
        let m = Mask::from_fn(5, 1, |_, _| true);
        let c = trace_contours(&m);
        assert_eq!(c[0].points, pts(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (3, 0), (2, 0), (1, 0)]));
    }

    #[test]
    fn two_blocks_in_label_order() {
        let m = Mask::from_fn(10, 6, |x, y| {
            ((5..8).contains(&x) && (0..3).contains(&y)) || ((0..3).contains(&x) && (3..6).contains(&y))
        });
        let c = trace_contours(&m);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].points[0], Point::new(5, 0));
        assert_eq!(c[1].points[0], Point::new(0, 3));
        assert!(c.iter().all(|c| c.len() == 8));
    }

    #[test]
    fn start_pixel_visited_twice() {
        // an X: the start pixel's only foreground neighbor is the center
        let m = Mask::from_fn(3, 3, |x, y| x == y || x + y == 2);
        let c = trace_contours(&m);
        assert_eq!(c.len(), 1);
        let contour = &c[0];
        assert!(contour.steps().all(|(a, b)| a.is_8_neighbor(b)));
        for p in [(0, 0), (2, 0), (1, 1), (0, 2), (2, 2)] {
            assert!(contour.points.contains(&Point::new(p.0, p.1)));
        }
    }

    #[test]
    fn hole_is_not_traced() {
        let m = Mask::from_fn(5, 5, |x, y| !(x == 2 && y == 2));
        let c = trace_contours(&m);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), 16);
    }
}
