use crate::raster::{same_dims, ImageBuffer};
use crate::{Error, Result};

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
const C1: f64 = 0.01 * 0.01;
const C2: f64 = 0.03 * 0.03;

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut k = [0.0; SSIM_WINDOW];
    let c = (SSIM_WINDOW / 2) as f64;
    for (i, v) in k.iter_mut().enumerate() {
        let d = i as f64 - c;
        *v = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let s: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= s);
    k
}

/// Separable "valid" filtering: output is `(w - 10) x (h - 10)`.
fn filter_valid(src: &[f64], w: usize, h: usize, k: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let (ow, oh) = (w + 1 - SSIM_WINDOW, h + 1 - SSIM_WINDOW);
    let mut horiz = vec![0.0; ow * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = k
                .iter()
                .zip(&row[x..x + SSIM_WINDOW])
                .map(|(a, b)| a * b)
                .sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = k
                .iter()
                .enumerate()
                .map(|(j, kv)| kv * horiz[(y + j) * ow + x])
                .sum();
        }
    }
    out
}

/// Mean structural similarity over all window positions fully inside the image.
///
/// Colour input is reduced to gray by channel mean.
pub fn ssim(a: &ImageBuffer, b: &ImageBuffer) -> Result<f64> {
    same_dims("ssim", a.dims(), b.dims())?;
    let (w, h) = a.dims();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            window: SSIM_WINDOW,
        });
    }
    let x = a.gray_f64();
    let y = b.gray_f64();
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p * q).collect();
    let k = gaussian_kernel();
    let [mx, my, sxx, syy, sxy] = [&x, &y, &xx, &yy, &xy].map(|s| filter_valid(s, w, h, &k));
    let n = mx.len();
    let total: f64 = (0..n)
        .map(|i| {
            let (ux, uy) = (mx[i], my[i]);
            let vx = sxx[i] - ux * ux;
            let vy = syy[i] - uy * uy;
            let cov = sxy[i] - ux * uy;
            ((2.0 * ux * uy + C1) * (2.0 * cov + C2)) / ((ux * ux + uy * uy + C1) * (vx + vy + C2))
        })
        .sum();
    Ok(total / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn textured(w: usize, h: usize, phase: f32) -> ImageBuffer {
        ImageBuffer::from_fn(w, h, 3, |x, y, c| {
            0.5 + 0.4 * ((x as f32 * 0.9 + y as f32 * 0.4 + c as f32 + phase).sin())
        })
        .unwrap()
    }

    #[test]
    fn self_similarity_is_one() {
        let img = textured(24, 17, 0.0);
        assert!((ssim(&img, &img).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_closed_form() {
        for (c1, c2) in [(0.2f32, 0.7f32), (0.0, 1.0), (0.5, 0.25)] {
            let a = ImageBuffer::filled(16, 12, 1, c1).unwrap();
            let b = ImageBuffer::filled(16, 12, 1, c2).unwrap();
            let (p, q) = (f64::from(c1), f64::from(c2));
            let expected = (2.0 * p * q + C1) / (p * p + q * q + C1);
            assert!((ssim(&a, &b).unwrap() - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn symmetric_and_bounded() {
        let a = textured(20, 20, 0.0);
        let b = textured(20, 20, 1.3);
        let s = ssim(&a, &b).unwrap();
        assert_eq!(s, ssim(&b, &a).unwrap());
        assert!((-1.0..1.0).contains(&s));
    }

    #[test]
    fn too_small() {
        let a = ImageBuffer::filled(10, 40, 1, 0.5).unwrap();
        assert!(matches!(ssim(&a, &a), Err(Error::ImageTooSmall { .. })));
    }

    #[test]
    fn kernel_is_normalised_and_symmetric() {
        let k = gaussian_kernel();
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        for i in 0..SSIM_WINDOW {
            assert_eq!(k[i], k[SSIM_WINDOW - 1 - i]);
        }
    }
}
