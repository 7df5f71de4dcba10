//! Flow smoothness, reconstruction and perceptual losses, plus SSIM.

mod features;
mod ssim;

pub use self::features::{FeatureExtractor, FeatureMap, PyramidExtractor};
pub use self::ssim::{ssim, SSIM_SIGMA, SSIM_WINDOW};

use serde::{Deserialize, Serialize};

use crate::perturb::TrainingExample;
use crate::raster::{same_dims, BinaryMask, FlowField, ImageBuffer};
use crate::warp::warp_bilinear;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TvLoss {
    pub value: f64,
    /// Adjacent valid pairs that contributed. Zero means `value` is a placeholder 0.
    pub pairs: usize,
}

/// Mean of `|Δdx| + |Δdy|` over horizontally and vertically adjacent pairs of
/// valid pixels, where `(dx, dy)` is the displacement `source - position`.
///
/// Measured on displacements, the identity flow and any pure translation
/// score 0.
pub fn tv_loss(flow: &FlowField) -> TvLoss {
    let (w, h) = flow.dims();
    let mut sum = 0.0;
    let mut pairs = 0usize;
    let mut add = |a: Option<[f64; 2]>, b: Option<[f64; 2]>| {
        if let (Some(p), Some(q)) = (a, b) {
            sum += (p[0] - q[0]).abs() + (p[1] - q[1]).abs();
            pairs += 1;
        }
    };
    for y in 0..h {
        for x in 0..w {
            let here = flow.displacement(x, y);
            if x + 1 < w {
                add(here, flow.displacement(x + 1, y));
            }
            if y + 1 < h {
                add(here, flow.displacement(x, y + 1));
            }
        }
    }
    let value = if pairs == 0 { 0.0 } else { sum / pairs as f64 };
    TvLoss { value, pairs }
}

/// Mean absolute difference over all channels of the pixels in `region`
/// (every pixel when `None`).
pub fn l1_recon(a: &ImageBuffer, b: &ImageBuffer, region: Option<&BinaryMask>) -> Result<f64> {
    same_dims("l1", a.dims(), b.dims())?;
    if a.channels() != b.channels() {
        return Err(Error::Channels(b.channels()));
    }
    let ch = a.channels();
    if let Some(m) = region {
        same_dims("l1 region", a.dims(), m.dims())?;
    }
    let mut sum = 0.0;
    let mut n = 0usize;
    for (i, (pa, pb)) in a
        .data()
        .chunks_exact(ch)
        .zip(b.data().chunks_exact(ch))
        .enumerate()
    {
        if region.is_some_and(|m| !m.data()[i]) {
            continue;
        }
        sum += pa
            .iter()
            .zip(pb)
            .map(|(&p, &q)| (f64::from(p) - f64::from(q)).abs())
            .sum::<f64>();
        n += ch;
    }
    if n == 0 {
        return Err(Error::EmptyRegion);
    }
    Ok(sum / n as f64)
}

/// Sum over scales of the mean absolute feature difference.
pub fn perceptual_loss(
    a: &ImageBuffer,
    b: &ImageBuffer,
    extractor: &dyn FeatureExtractor,
) -> Result<f64> {
    same_dims("perceptual", a.dims(), b.dims())?;
    let fa = extractor.extract(a)?;
    let fb = extractor.extract(b)?;
    if fa.len() != fb.len() {
        return Err(Error::InvalidParameter(
            "extractor returned different scale counts".into(),
        ));
    }
    let mut total = 0.0;
    for (p, q) in fa.iter().zip(&fb) {
        if p.data.len() != q.data.len() {
            return Err(Error::InvalidParameter(
                "extractor returned mismatched feature shapes".into(),
            ));
        }
        if p.data.is_empty() {
            continue;
        }
        let s: f64 = p.data.iter().zip(&q.data).map(|(x, y)| (x - y).abs()).sum();
        total += s / p.data.len() as f64;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LossWeights {
    pub tv: f64,
    pub l1: f64,
    pub perceptual: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        Self {
            tv: 1.0,
            l1: 1.0,
            perceptual: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossReport {
    pub tv: f64,
    pub l1: f64,
    pub perceptual: f64,
    pub total: f64,
}

impl LossReport {
    pub fn new(tv: f64, l1: f64, perceptual: f64, weights: &LossWeights) -> Self {
        let total = weights.tv * tv + weights.l1 * l1 + weights.perceptual * perceptual;
        Self {
            tv,
            l1,
            perceptual,
            total,
        }
    }

    /// `tv=`, `l1=`, `perceptual=`, `total=` lines.
    pub fn to_kv(&self) -> String {
        crate::kv::render([
            ("tv", self.tv.to_string()),
            ("l1", self.l1.to_string()),
            ("perceptual", self.perceptual.to_string()),
            ("total", self.total.to_string()),
        ])
    }
}

/// Scores a candidate flow for an example: smoothness of the flow, then L1 and
/// perceptual distance between the target and the perturbed image warped by
/// the flow, both restricted to the flow's valid pixels.
pub fn corrector_objective(
    example: &TrainingExample,
    corrected_flow: &FlowField,
    extractor: &dyn FeatureExtractor,
    weights: &LossWeights,
) -> Result<LossReport> {
    same_dims(
        "corrected flow",
        example.target_image.dims(),
        corrected_flow.dims(),
    )?;
    let (warped, valid) = warp_bilinear(&example.perturbed_image, corrected_flow)?;
    let l1 = l1_recon(&example.target_image, &warped, Some(&valid))?;
    let target = mask_image(&example.target_image, &valid);
    let perceptual = perceptual_loss(&target, &warped, extractor)?;
    Ok(LossReport::new(
        tv_loss(corrected_flow).value,
        l1,
        perceptual,
        weights,
    ))
}

fn mask_image(image: &ImageBuffer, mask: &BinaryMask) -> ImageBuffer {
    let ch = image.channels();
    let mut data = image.data().to_vec();
    for (i, &keep) in mask.data().iter().enumerate() {
        if !keep {
            data[i * ch..(i + 1) * ch].fill(0.0);
        }
    }
    ImageBuffer::from_parts(image.width(), image.height(), ch, data)
}
