use crate::raster::ImageBuffer;
use crate::Result;

/// A stack of equally sized feature planes, plane-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMap {
    pub width: usize,
    pub height: usize,
    pub planes: usize,
    pub data: Vec<f64>,
}

/// Maps an image to feature rasters at one or more scales.
///
/// Implementations must be deterministic, and the shapes they return may
/// depend only on the input shape.
pub trait FeatureExtractor: Sync {
    fn extract(&self, image: &ImageBuffer) -> Result<Vec<FeatureMap>>;
}

/// Gray pyramid with intensity and forward-difference gradient planes per level.
///
/// Each level halves the previous one by 2x2 averaging (odd trailing rows and
/// columns are dropped). Levels stop early once a side would reach zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PyramidExtractor {
    pub levels: usize,
}

impl Default for PyramidExtractor {
    fn default() -> Self {
        Self { levels: 3 }
    }
}

impl FeatureExtractor for PyramidExtractor {
    fn extract(&self, image: &ImageBuffer) -> Result<Vec<FeatureMap>> {
        let (mut w, mut h) = image.dims();
        let mut gray = image.gray_f64();
        let mut out = Vec::with_capacity(self.levels);
        for level in 0..self.levels {
            if level > 0 {
                if w < 2 || h < 2 {
                    break;
                }
                (gray, w, h) = downsample(&gray, w, h);
            }
            out.push(gradient_planes(&gray, w, h));
        }
        Ok(out)
    }
}

fn downsample(g: &[f64], w: usize, h: usize) -> (Vec<f64>, usize, usize) {
    let (nw, nh) = (w / 2, h / 2);
    let mut out = Vec::with_capacity(nw * nh);
    for y in 0..nh {
        for x in 0..nw {
            let (x0, y0) = (2 * x, 2 * y);
            let s = g[y0 * w + x0]
                + g[y0 * w + x0 + 1]
                + g[(y0 + 1) * w + x0]
                + g[(y0 + 1) * w + x0 + 1];
            out.push(s / 4.0);
        }
    }
    (out, nw, nh)
}

fn gradient_planes(g: &[f64], w: usize, h: usize) -> FeatureMap {
    let n = w * h;
    let mut data = vec![0.0; 3 * n];
    data[..n].copy_from_slice(g);
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if x + 1 < w {
                data[n + i] = g[i + 1] - g[i];
            }
            if y + 1 < h {
                data[2 * n + i] = g[i + w] - g[i];
            }
        }
    }
    FeatureMap {
        width: w,
        height: h,
        planes: 3,
        data,
    }
}
