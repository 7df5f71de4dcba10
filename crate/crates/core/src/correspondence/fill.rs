use crate::error::{Error, Result};
use crate::par;
use crate::raster::{BinaryMask, FlowField};

const NONE: u32 = u32::MAX;

/// Exact nearest-set-pixel lookup under the Euclidean image metric.
///
/// A column pass records, for every pixel, the closest set row above and
/// below it in the same column. A query then scans columns outward from its
/// own and stops once the horizontal offset alone exceeds the best distance.
/// Equal distances resolve to the smallest `(y, x)`.
pub(crate) struct NearestSet {
    width: usize,
    height: usize,
    up: Vec<u32>,
    down: Vec<u32>,
}

impl NearestSet {
    pub(crate) fn new(set: &[bool], width: usize, height: usize) -> Self {
        let n = width * height;
        let mut up = vec![NONE; n];
        let mut down = vec![NONE; n];
        for x in 0..width {
            let mut last = NONE;
            for y in 0..height {
                if set[y * width + x] {
                    last = y as u32;
                }
                up[y * width + x] = last;
            }
            last = NONE;
            for y in (0..height).rev() {
                if set[y * width + x] {
                    last = y as u32;
                }
                down[y * width + x] = last;
            }
        }
        Self {
            width,
            height,
            up,
            down,
        }
    }

    /// Nearest set pixel to `(x, y)`, or `None` when nothing is set.
    pub(crate) fn nearest(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        debug_assert!(x < self.width && y < self.height);
        let mut best: Option<(usize, usize, usize)> = None;
        for dx in 0..self.width {
            if best.is_some_and(|(d2, _, _)| dx * dx > d2) {
                break;
            }
            let left = x.checked_sub(dx);
            let right = (dx > 0 && x + dx < self.width).then_some(x + dx);
            for col in [left, right].into_iter().flatten() {
                let Some((dy, row)) = self.column_candidate(col, y) else {
                    continue;
                };
                let cand = (dx * dx + dy * dy, row, col);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, row, col)| (col, row))
    }

    fn column_candidate(&self, col: usize, y: usize) -> Option<(usize, usize)> {
        let i = y * self.width + col;
        let above = (self.up[i] != NONE).then(|| (y - self.up[i] as usize, self.up[i] as usize));
        let below =
            (self.down[i] != NONE).then(|| (self.down[i] as usize - y, self.down[i] as usize));
        match (above, below) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        }
    }
}

/// Gives every invalid pixel inside `region` the flow of its nearest valid pixel.
///
/// Valid pixels are left untouched, as are invalid pixels outside `region`.
pub fn fill_holes(flow: &FlowField, region: &BinaryMask) -> Result<FlowField> {
    crate::raster::same_dims("hole-fill region", flow.dims(), region.dims())?;
    if flow.valid_count() == 0 {
        return Err(Error::NoValidPixels);
    }
    let (w, h) = flow.dims();
    let valid: Vec<bool> = flow.coords().iter().map(Option::is_some).collect();
    let nearest = NearestSet::new(&valid, w, h);
    let rows = par::map_range(h, |y| {
        (0..w)
            .map(|x| match flow.get(x, y) {
                Some(c) => Some(c),
                None if region.get(x, y) => {
                    nearest.nearest(x, y).and_then(|(nx, ny)| flow.get(nx, ny))
                }
                None => None,
            })
            .collect::<Vec<_>>()
    });
    Ok(FlowField::from_parts(
        w,
        h,
        flow.source_dims(),
        rows.into_iter().flatten().collect(),
    ))
}
