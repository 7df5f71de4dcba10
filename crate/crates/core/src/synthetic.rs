//! Procedural person-like fixtures: a textured image with matching DensePose
//! and parse maps. Used by the test suites and benchmarks, and handy for
//! trying the CLI without real annotations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::raster::{ImageBuffer, IuvMap, Label, ParseMap};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Figure {
    pub image: ImageBuffer,
    pub iuv: IuvMap,
    pub parse: ParseMap,
}

#[derive(Clone, Copy)]
struct Region {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    ellipse: bool,
}

impl Region {
    fn contains(&self, x: f64, y: f64) -> bool {
        if x < self.x0 || x >= self.x1 || y < self.y0 || y >= self.y1 {
            return false;
        }
        if !self.ellipse {
            return true;
        }
        let (cx, cy) = ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0);
        let (rx, ry) = ((self.x1 - self.x0) / 2.0, (self.y1 - self.y0) / 2.0);
        ((x - cx) / rx).powi(2) + ((y - cy) / ry).powi(2) <= 1.0
    }

    fn uv(&self, x: f64, y: f64) -> (f32, f32) {
        let u = ((x - self.x0) / (self.x1 - self.x0)).clamp(0.0, 1.0);
        let v = ((y - self.y0) / (self.y1 - self.y0)).clamp(0.0, 1.0);
        (u as f32, v as f32)
    }
}

struct Piece {
    part: u8,
    region: Region,
    label: Label,
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Region {
    Region {
        x0,
        y0,
        x1,
        y1,
        ellipse: false,
    }
}

/// A standing figure with head, torso, arms and legs on a flat background.
///
/// Positions and texture phases vary with `seed`. Within each body part the
/// UV coordinates are an affine function of position, so every foreground
/// pixel carries a distinct `(part, u, v)` triple.
pub fn figure(width: usize, height: usize, seed: u64) -> Result<Figure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jx = rng.random_range(-0.02..=0.02);
    let jy = rng.random_range(-0.02..=0.02);
    let sx = |v: f64| (v + jx) * width as f64;
    let sy = |v: f64| (v + jy) * height as f64;
    let r = |x0, y0, x1, y1| rect(sx(x0), sy(y0), sx(x1), sy(y1));

    let head = Region {
        ellipse: true,
        ..r(0.41, 0.03, 0.59, 0.23)
    };
    let head_mid = sy(0.03) + (sy(0.23) - sy(0.03)) / 3.0;
    let pieces = [
        Piece {
            part: 23,
            region: head,
            label: Label::Face,
        },
        Piece {
            part: 2,
            region: r(0.33, 0.23, 0.67, 0.58),
            label: Label::Top,
        },
        Piece {
            part: 15,
            region: r(0.20, 0.25, 0.32, 0.41),
            label: Label::Arms,
        },
        Piece {
            part: 16,
            region: r(0.68, 0.25, 0.80, 0.41),
            label: Label::Arms,
        },
        Piece {
            part: 19,
            region: r(0.20, 0.41, 0.32, 0.56),
            label: Label::Arms,
        },
        Piece {
            part: 20,
            region: r(0.68, 0.41, 0.80, 0.56),
            label: Label::Arms,
        },
        Piece {
            part: 7,
            region: r(0.36, 0.58, 0.49, 0.77),
            label: Label::Pants,
        },
        Piece {
            part: 8,
            region: r(0.51, 0.58, 0.64, 0.77),
            label: Label::Pants,
        },
        Piece {
            part: 11,
            region: r(0.36, 0.77, 0.49, 0.96),
            label: Label::Legs,
        },
        Piece {
            part: 12,
            region: r(0.51, 0.77, 0.64, 0.96),
            label: Label::Legs,
        },
    ];

    let phases: Vec<f64> = (0..6)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    let freq: Vec<f64> = (0..6).map(|_| rng.random_range(2.0..5.0)).collect();

    let (w, h) = (width, height);
    let mut parts = vec![0u8; w * h];
    let mut uv = vec![[0f32; 2]; w * h];
    let mut labels = vec![Label::Background; w * h];
    for y in 0..h {
        for x in 0..w {
            let (px, py) = (x as f64 + 0.5, y as f64 + 0.5);
            if let Some(p) = pieces.iter().find(|p| p.region.contains(px, py)) {
                let i = y * w + x;
                parts[i] = p.part;
                let (u, v) = p.region.uv(px, py);
                uv[i] = [u, v];
                labels[i] = p.label;
                if labels[i] == Label::Face && py < head_mid {
                    labels[i] = Label::Hair;
                }
            }
        }
    }
    let iuv = IuvMap::new(w, h, parts, uv)?;
    let parse = ParseMap::new(w, h, labels)?;
    let image = ImageBuffer::from_fn(w, h, 3, |x, y, c| {
        let (u, v) = (x as f64 / w as f64, y as f64 / h as f64);
        if iuv.part(x, y) == 0 {
            return (0.8 - 0.1 * v) as f32;
        }
        let t = std::f64::consts::TAU;
        let a = (t * freq[c] * u + phases[c]).sin();
        let b = (t * freq[c + 3] * v + phases[c + 3]).cos();
        (0.5 + 0.25 * a + 0.15 * b) as f32
    })?;
    Ok(Figure { image, iuv, parse })
}
