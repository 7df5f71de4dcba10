//! Random DensePose maps for equivalence tests and benchmarks.

#![allow(dead_code)]

use rand::{Rng, RngCore};
use streetwarp::raster::IuvMap;

/// How UV values are drawn.
#[derive(Clone, Copy, Debug)]
pub enum UvStyle {
    /// Independent uniform values.
    Noise,
    /// Multiples of 1/8, so exact distance ties are common.
    Coarse,
    /// Smooth per-part ramps plus small jitter.
    Smooth,
}

pub fn random_map(
    rng: &mut impl RngCore,
    w: usize,
    h: usize,
    parts: &[u8],
    background: f64,
    style: UvStyle,
) -> IuvMap {
    let offsets: Vec<(f32, f32)> = parts
        .iter()
        .map(|_| (rng.random_range(-0.2..0.2), rng.random_range(-0.2..0.2)))
        .collect();
    IuvMap::from_fn(w, h, |x, y| {
        if rng.random_bool(background) {
            return (0, 0.0, 0.0);
        }
        let k = rng.random_range(0..parts.len());
        let (u, v) = match style {
            UvStyle::Noise => (rng.random(), rng.random()),
            UvStyle::Coarse => (
                rng.random_range(0..=8) as f32 / 8.0,
                rng.random_range(0..=8) as f32 / 8.0,
            ),
            UvStyle::Smooth => {
                let (ou, ov) = offsets[k];
                let ju: f32 = rng.random_range(-0.01..0.01);
                let jv: f32 = rng.random_range(-0.01..0.01);
                (
                    ((x as f32 + 0.5) / w as f32 + ou + ju).clamp(0.0, 1.0),
                    ((y as f32 + 0.5) / h as f32 + ov + jv).clamp(0.0, 1.0),
                )
            }
        };
        (parts[k], u, v)
    })
    .expect("generated map is valid")
}

/// Distinct part ids in 1..=24.
pub fn random_parts(rng: &mut impl RngCore, count: usize) -> Vec<u8> {
    let mut all: Vec<u8> = (1..=24).collect();
    for i in 0..count {
        let j = rng.random_range(i..all.len());
        all.swap(i, j);
    }
    all.truncate(count);
    all
}

/// Every pixel is foreground, with the raster tiled into 24 part blocks
/// (6 across, 4 down) carrying smooth UV ramps.
pub fn full_body_map(w: usize, h: usize, shift: f32) -> IuvMap {
    IuvMap::from_fn(w, h, |x, y| {
        let (bx, by) = (x * 6 / w, y * 4 / h);
        let (x0, x1) = (bx * w / 6, (bx + 1) * w / 6);
        let (y0, y1) = (by * h / 4, (by + 1) * h / 4);
        let u = (x - x0) as f32 / (x1 - x0) as f32;
        let v = (y - y0) as f32 / (y1 - y0) as f32;
        let wobble = shift * ((v * 7.0).sin() + (u * 5.0).cos());
        (
            (by * 6 + bx + 1) as u8,
            (u + wobble).clamp(0.0, 1.0),
            (v - wobble).clamp(0.0, 1.0),
        )
    })
    .expect("generated map is valid")
}
