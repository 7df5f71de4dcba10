use crate::error::{Error, Result};
use crate::raster::{BinaryMask, IuvMap, MAX_PART, PART_COUNT};

/// Slack absorbing rounding in the cell lower bounds.
const RING_SLACK: f64 = 1e-9;

/// One indexed garment pixel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UvEntry {
    pub x: u32,
    pub y: u32,
    pub u: f32,
    pub v: f32,
}

/// Result of a nearest-UV lookup.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UvMatch {
    pub x: usize,
    pub y: usize,
    pub uv_distance: f64,
}

/// Uniform grid over one part's `[0, 1]^2` chart, stored CSR-style: the
/// entries of cell `c` are `entries[starts[c]..starts[c + 1]]`, in raster order.
#[derive(Clone, Debug)]
struct PartGrid {
    starts: Vec<u32>,
    entries: Vec<UvEntry>,
}

/// Per-part spatial index of garment pixels in UV space.
#[derive(Clone, Debug)]
pub struct UvIndex {
    epsilon: f64,
    cells: usize,
    grids: Vec<Option<PartGrid>>,
    len: usize,
}

#[inline]
pub(crate) fn uv_distance_sq(a: [f64; 2], b: [f64; 2]) -> f64 {
    let du = a[0] - b[0];
    let dv = a[1] - b[1];
    du * du + dv * dv
}

impl UvIndex {
    /// Indexes every non-background pixel of `garment`, restricted to `region` when given.
    pub fn build(garment: &IuvMap, region: Option<&BinaryMask>, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "UV cell size must be in (0, 1], got {epsilon}"
            )));
        }
        if let Some(region) = region {
            crate::raster::same_dims("index region", garment.dims(), region.dims())?;
        }
        let cells = (1.0 / epsilon).ceil() as usize;
        let cell_of = |t: f32| ((f64::from(t) / epsilon).floor() as usize).min(cells - 1);

        // Counting sort by (part, cell); raster order is preserved within a cell.
        let mut keyed: Vec<Vec<(usize, UvEntry)>> = vec![Vec::new(); PART_COUNT];
        let (w, h) = garment.dims();
        for y in 0..h {
            for x in 0..w {
                let part = garment.part(x, y);
                if part == 0 || region.is_some_and(|r| !r.get(x, y)) {
                    continue;
                }
                let [u, v] = garment.uv_at(x, y);
                let cell = cell_of(v) * cells + cell_of(u);
                let entry = UvEntry {
                    x: x as u32,
                    y: y as u32,
                    u,
                    v,
                };
                keyed[usize::from(part)].push((cell, entry));
            }
        }

        let mut len = 0;
        let grids = keyed
            .into_iter()
            .map(|items| {
                if items.is_empty() {
                    return None;
                }
                len += items.len();
                let mut starts = vec![0u32; cells * cells + 1];
                for (cell, _) in &items {
                    starts[cell + 1] += 1;
                }
                for i in 1..starts.len() {
                    starts[i] += starts[i - 1];
                }
                let mut cursor = starts.clone();
                let mut entries = vec![items[0].1; items.len()];
                for (cell, entry) in items {
                    entries[cursor[cell] as usize] = entry;
                    cursor[cell] += 1;
                }
                Some(PartGrid { starts, entries })
            })
            .collect();

        Ok(Self {
            epsilon,
            cells,
            grids,
            len,
        })
    }

    /// Total number of indexed pixels.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True when no garment pixel was indexed; queries always miss.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Number of occupied cells for `part`.
    pub fn occupied_cells(&self, part: u8) -> usize {
        self.grid(part)
            .map_or(0, |g| g.starts.windows(2).filter(|w| w[1] > w[0]).count())
    }

    /// Indexed entries of `part`, grouped by cell.
    pub fn entries(&self, part: u8) -> &[UvEntry] {
        self.grid(part).map_or(&[], |g| &g.entries)
    }

    fn grid(&self, part: u8) -> Option<&PartGrid> {
        if part == 0 || part > MAX_PART {
            return None;
        }
        self.grids[usize::from(part)].as_ref()
    }

    fn cell_of(&self, t: f64) -> usize {
        ((t / self.epsilon).floor().max(0.0) as usize).min(self.cells - 1)
    }

    /// Nearest indexed pixel of the same part in Euclidean UV distance.
    ///
    /// Misses when the part is absent or the nearest pixel lies farther than
    /// `tau`. Equal distances resolve to the smallest `(y, x)`.
    pub fn query_nearest(&self, part: u8, u: f64, v: f64, tau: f64) -> Option<UvMatch> {
        let grid = self.grid(part)?;
        let tau_sq = tau * tau;
        let (cu, cv) = (self.cell_of(u) as isize, self.cell_of(v) as isize);
        let last = self.cells as isize - 1;
        let farthest = cu.max(last - cu).max(cv).max(last - cv);

        let mut best: Option<(f64, u32, u32)> = None;
        for ring in 0..=farthest {
            // Anything in this ring is more than (ring - 1) cells away.
            let bound = (ring - 1).max(0) as f64 * self.epsilon - RING_SLACK;
            if bound > tau {
                break;
            }
            if let Some((d2, _, _)) = best {
                if bound > d2.sqrt() {
                    break;
                }
            }
            for_each_ring_cell(cu, cv, ring, last, |cell| {
                let lo = grid.starts[cell] as usize;
                let hi = grid.starts[cell + 1] as usize;
                for e in &grid.entries[lo..hi] {
                    let d2 = uv_distance_sq([f64::from(e.u), f64::from(e.v)], [u, v]);
                    if d2 > tau_sq {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bd, by, bx)) => (d2, e.y, e.x) < (bd, by, bx),
                    };
                    if better {
                        best = Some((d2, e.y, e.x));
                    }
                }
            });
        }
        best.map(|(d2, y, x)| UvMatch {
            x: x as usize,
            y: y as usize,
            uv_distance: d2.sqrt(),
        })
    }
}

/// Visits the in-bounds cells at Chebyshev distance `ring` from `(cu, cv)`.
fn for_each_ring_cell(cu: isize, cv: isize, ring: isize, last: isize, mut f: impl FnMut(usize)) {
    let stride = last + 1;
    let mut visit = |i: isize, j: isize| {
        if (0..=last).contains(&i) && (0..=last).contains(&j) {
            f((j * stride + i) as usize);
        }
    };
    if ring == 0 {
        visit(cu, cv);
        return;
    }
    for i in cu - ring..=cu + ring {
        visit(i, cv - ring);
        visit(i, cv + ring);
    }
    for j in cv - ring + 1..cv + ring {
        visit(cu - ring, j);
        visit(cu + ring, j);
    }
}
