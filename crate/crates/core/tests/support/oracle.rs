//! Exhaustive reference for the naive flow: every person pixel is compared
//! against every garment pixel of the same part, and holes are filled by a
//! full scan for the nearest matched pixel.

#![allow(dead_code)]

use streetwarp::raster::{BinaryMask, FlowField, IuvMap, PART_COUNT};

/// Garment pixels grouped by part, in row-major order.
pub struct Buckets(Vec<Vec<(usize, usize, f64, f64)>>);

impl Buckets {
    pub fn new(garment: &IuvMap, region: Option<&BinaryMask>) -> Self {
        let mut buckets = vec![Vec::new(); PART_COUNT];
        let (w, h) = garment.dims();
        for y in 0..h {
            for x in 0..w {
                let p = garment.part(x, y);
                if p == 0 || region.is_some_and(|m| !m.get(x, y)) {
                    continue;
                }
                let [u, v] = garment.uv_at(x, y);
                buckets[p as usize].push((x, y, f64::from(u), f64::from(v)));
            }
        }
        Buckets(buckets)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Vec::is_empty)
    }
}

pub fn brute_force_match(buckets: &Buckets, person: &IuvMap, tau: f64) -> Vec<Option<[f64; 2]>> {
    let (w, h) = person.dims();
    let mut out = vec![None; w * h];
    for y in 0..h {
        for x in 0..w {
            let p = person.part(x, y);
            if p == 0 {
                continue;
            }
            let [u, v] = person.uv_at(x, y);
            let (u, v) = (f64::from(u), f64::from(v));
            let mut best: Option<(f64, usize, usize)> = None;
            // Row-major order plus a strict comparison keeps the smallest (y, x) on ties.
            for &(gx, gy, gu, gv) in &buckets.0[p as usize] {
                let d2 = (u - gu) * (u - gu) + (v - gv) * (v - gv);
                if best.is_none_or(|(b, _, _)| d2 < b) {
                    best = Some((d2, gx, gy));
                }
            }
            if let Some((d2, gx, gy)) = best {
                if d2 <= tau * tau {
                    out[y * w + x] = Some([gx as f64, gy as f64]);
                }
            }
        }
    }
    out
}

/// Copies the value of the nearest `Some` pixel into every `None` pixel of
/// `region`; ties go to the smallest `(d², y, x)`.
pub fn brute_force_fill(
    coords: &[Option<[f64; 2]>],
    w: usize,
    h: usize,
    region: &BinaryMask,
) -> Vec<Option<[f64; 2]>> {
    let valid: Vec<(usize, usize)> = (0..h)
        .flat_map(|y| (0..w).map(move |x| (x, y)))
        .filter(|&(x, y)| coords[y * w + x].is_some())
        .collect();
    let mut out = coords.to_vec();
    for y in 0..h {
        for x in 0..w {
            if coords[y * w + x].is_some() || !region.get(x, y) {
                continue;
            }
            let nearest = valid
                .iter()
                .min_by_key(|&&(vx, vy)| {
                    let dx = vx.abs_diff(x);
                    let dy = vy.abs_diff(y);
                    (dx * dx + dy * dy, vy, vx)
                })
                .copied();
            out[y * w + x] = nearest.and_then(|(vx, vy)| coords[vy * w + vx]);
        }
    }
    out
}

/// Reference naive flow with the library's default semantics.
pub fn brute_force_flow(
    garment: &IuvMap,
    region: Option<&BinaryMask>,
    person: &IuvMap,
    tau: f64,
    fill: bool,
) -> FlowField {
    let (w, h) = person.dims();
    let buckets = Buckets::new(garment, region);
    let mut coords = if buckets.is_empty() {
        vec![None; w * h]
    } else {
        brute_force_match(&buckets, person, tau)
    };
    if fill && coords.iter().any(Option::is_some) {
        coords = brute_force_fill(&coords, w, h, &person.foreground());
    }
    FlowField::new(w, h, garment.dims(), coords).expect("oracle produced an out-of-range flow")
}
