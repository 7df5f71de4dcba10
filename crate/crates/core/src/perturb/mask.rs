use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::raster::BinaryMask;

use super::{draw, draw_count, StrokeConfig};

/// A polyline brush stroke in pixel coordinates with a round brush of `radius` pixels.
#[derive(Clone, Debug, PartialEq)]
pub struct Stroke {
    pub points: Vec<[f64; 2]>,
    pub radius: f64,
}

/// Random-walk strokes: a random start, then per vertex a random turn of
/// the heading and a random segment length. Vertices are kept on the canvas.
pub fn sample_strokes(
    seed: u64,
    width: usize,
    height: usize,
    config: &StrokeConfig,
) -> Result<Vec<Stroke>> {
    config.validate()?;
    crate::raster::check_dims(width, height)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = width.min(height) as f64;
    let (max_x, max_y) = ((width - 1) as f64, (height - 1) as f64);
    let max_turn = config.max_turn.to_radians().abs();

    let count = draw_count(&mut rng, config.count);
    let mut strokes = Vec::with_capacity(count);
    for _ in 0..count {
        let vertices = draw_count(&mut rng, config.vertices);
        let radius = draw(&mut rng, config.width) * side / 2.0;
        let mut p = [rng.random_range(0.0..=max_x), rng.random_range(0.0..=max_y)];
        let mut heading = rng.random_range(0.0..std::f64::consts::TAU);
        let mut points = vec![p];
        for _ in 1..vertices {
            heading += draw(&mut rng, [-max_turn, max_turn]);
            let len = draw(&mut rng, config.segment_length) * side;
            p = [
                (p[0] + len * heading.cos()).clamp(0.0, max_x),
                (p[1] + len * heading.sin()).clamp(0.0, max_y),
            ];
            points.push(p);
        }
        strokes.push(Stroke { points, radius });
    }
    Ok(strokes)
}

/// Sets every pixel whose centre lies within `radius` of a stroke's polyline.
pub fn rasterize_strokes(strokes: &[Stroke], width: usize, height: usize) -> Result<BinaryMask> {
    let mut data = vec![false; crate::raster::check_dims(width, height)?];
    for stroke in strokes {
        let r = stroke.radius;
        let segments: Vec<([f64; 2], [f64; 2])> = match stroke.points.as_slice() {
            [] => continue,
            [p] => vec![(*p, *p)],
            pts => pts.windows(2).map(|w| (w[0], w[1])).collect(),
        };
        for (a, b) in segments {
            let x_lo = (a[0].min(b[0]) - r).floor().max(0.0) as usize;
            let y_lo = (a[1].min(b[1]) - r).floor().max(0.0) as usize;
            let x_hi = ((a[0].max(b[0]) + r).ceil().max(0.0) as usize).min(width - 1);
            let y_hi = ((a[1].max(b[1]) + r).ceil().max(0.0) as usize).min(height - 1);
            for y in y_lo..=y_hi {
                for x in x_lo..=x_hi {
                    if segment_distance_sq([x as f64, y as f64], a, b) <= r * r {
                        data[y * width + x] = true;
                    }
                }
            }
        }
    }
    BinaryMask::new(width, height, data)
}

fn segment_distance_sq(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len_sq = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len_sq > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len_sq).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let d = [ap[0] - t * ab[0], ap[1] - t * ab[1]];
    d[0] * d[0] + d[1] * d[1]
}

/// Union of random brush strokes, deterministic in `seed`.
pub fn free_form_mask(
    seed: u64,
    width: usize,
    height: usize,
    config: &StrokeConfig,
) -> Result<BinaryMask> {
    rasterize_strokes(&sample_strokes(seed, width, height, config)?, width, height)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_strokes_give_empty_mask() {
        let config = StrokeConfig {
            count: [0, 0],
            ..Default::default()
        };
        assert!(free_form_mask(5, 32, 24, &config).unwrap().is_empty());
    }

    #[test]
    fn single_vertex_stroke_is_a_disc() {
        let (w, h) = (64, 48);
        let width_frac = 0.25;
        let radius = width_frac / 2.0 * w.min(h) as f64;
        let centre = [(w / 2) as f64, (h / 2) as f64];
        let stroke = Stroke {
            points: vec![centre],
            radius,
        };
        let mask = rasterize_strokes(&[stroke], w, h).unwrap();
        let mut expected_count = 0;
        for y in 0..h {
            for x in 0..w {
                let (dx, dy) = (x as f64 - centre[0], y as f64 - centre[1]);
                let inside = dx * dx + dy * dy <= radius * radius;
                expected_count += usize::from(inside);
                assert_eq!(mask.get(x, y), inside);
            }
        }
        // r = 6: lattice points in the closed disc.
        assert_eq!(expected_count, 113);
    }

    #[test]
    fn sampled_single_vertex_is_a_disc_of_configured_width() {
        let config = StrokeConfig {
            count: [1, 1],
            vertices: [1, 1],
            width: [0.2, 0.2],
            ..Default::default()
        };
        let strokes = sample_strokes(3, 50, 40, &config).unwrap();
        assert_eq!(strokes.len(), 1);
        assert_eq!(strokes[0].points.len(), 1);
        assert!((strokes[0].radius - 4.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let config = StrokeConfig::default();
        let a = free_form_mask(17, 80, 60, &config).unwrap();
        assert_eq!(a, free_form_mask(17, 80, 60, &config).unwrap());
        assert_ne!(a, free_form_mask(18, 80, 60, &config).unwrap());
        assert!(!a.is_empty());
    }

    #[test]
    fn segment_distance() {
        assert_eq!(segment_distance_sq([1.0, 1.0], [0.0, 0.0], [2.0, 0.0]), 1.0);
        assert_eq!(segment_distance_sq([3.0, 0.0], [0.0, 0.0], [2.0, 0.0]), 1.0);
        assert_eq!(segment_distance_sq([0.0, 2.0], [0.0, 0.0], [0.0, 0.0]), 4.0);
    }
}
