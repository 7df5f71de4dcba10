//! Unpaired training-data synthesis.
//!
//! A person's DensePose is misregistered with a per-part cosine displacement
//! of its UV values, then image, DensePose and parse are moved together by a
//! random affine map. The naive flow from the perturbed DensePose back to the
//! original gives the corrector its input; the original image is the target.

mod augment;
mod cosine;
mod mask;
mod synth;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use self::augment::augment_segment;
pub use self::cosine::{cosine_perturb, CosineCoeffs, CosinePerturbParams};
pub use self::mask::{free_form_mask, rasterize_strokes, sample_strokes, Stroke};
pub use self::synth::{
    example_seed, synth_batch, synth_corrector_example, synth_with_params, TrainingExample,
};

use crate::affine::AffineParams;
use crate::error::{Error, Result};
use crate::raster::MAX_PART;

/// Free-form brush-stroke parameters. Widths and segment lengths are
/// fractions of `min(width, height)`; turns are in degrees.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StrokeConfig {
    pub count: [usize; 2],
    pub vertices: [usize; 2],
    pub width: [f64; 2],
    pub segment_length: [f64; 2],
    pub max_turn: f64,
}

impl Default for StrokeConfig {
    fn default() -> Self {
        Self {
            count: [1, 4],
            vertices: [4, 12],
            width: [0.03, 0.10],
            segment_length: [0.05, 0.25],
            max_turn: 90.0,
        }
    }
}

/// Sampling ranges for every stochastic perturbation, as inclusive `[lo, hi]` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PerturbConfig {
    /// Cosine amplitude in UV units.
    pub k_range: [f64; 2],
    /// Angular frequency in radians per UV unit.
    pub alpha_range: [f64; 2],
    /// Phase in radians.
    pub beta_range: [f64; 2],
    /// Degrees.
    pub rotation_range: [f64; 2],
    /// Fraction of width / height.
    pub translate_range: [f64; 2],
    pub scale_range: [f64; 2],
    /// Degrees.
    pub shear_range: [f64; 2],
    pub strokes: StrokeConfig,
}

impl Default for PerturbConfig {
    fn default() -> Self {
        use std::f64::consts::PI;
        Self {
            k_range: [0.0, 0.05],
            alpha_range: [0.0, 4.0 * PI],
            beta_range: [0.0, 2.0 * PI],
            rotation_range: [-15.0, 15.0],
            translate_range: [-0.05, 0.05],
            scale_range: [0.9, 1.1],
            shear_range: [-10.0, 10.0],
            strokes: StrokeConfig::default(),
        }
    }
}

fn check_range(name: &str, [lo, hi]: [f64; 2]) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidParameter(format!(
            "{name} range [{lo}, {hi}] is not an ordered finite interval"
        )));
    }
    Ok(())
}

impl PerturbConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, range) in [
            ("k", self.k_range),
            ("alpha", self.alpha_range),
            ("beta", self.beta_range),
            ("rotation", self.rotation_range),
            ("translate", self.translate_range),
            ("scale", self.scale_range),
            ("shear", self.shear_range),
        ] {
            check_range(name, range)?;
        }
        if self.k_range[0] < 0.0 {
            return Err(Error::InvalidParameter(
                "cosine amplitudes must be non-negative".into(),
            ));
        }
        if self.scale_range[0] <= 0.0 {
            return Err(Error::InvalidParameter("scale must be positive".into()));
        }
        if self.shear_range[0] <= -45.0 || self.shear_range[1] >= 45.0 {
            return Err(Error::InvalidParameter(
                "shear must lie strictly within ±45°".into(),
            ));
        }
        self.strokes.validate()
    }
}

impl StrokeConfig {
    pub fn validate(&self) -> Result<()> {
        check_range("stroke width", self.width)?;
        check_range("segment length", self.segment_length)?;
        if self.count[0] > self.count[1] || self.vertices[0] > self.vertices[1] {
            return Err(Error::InvalidParameter(
                "stroke count ranges must be ordered".into(),
            ));
        }
        if self.vertices[0] == 0 {
            return Err(Error::InvalidParameter(
                "strokes need at least one vertex".into(),
            ));
        }
        if self.width[0] < 0.0 || self.segment_length[0] < 0.0 || !self.max_turn.is_finite() {
            return Err(Error::InvalidParameter(
                "stroke sizes must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

pub(crate) fn draw(rng: &mut ChaCha8Rng, [lo, hi]: [f64; 2]) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

pub(crate) fn draw_count(rng: &mut ChaCha8Rng, [lo, hi]: [usize; 2]) -> usize {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

/// Draws cosine coefficients for every part, then one affine map. Pure in `(seed, config)`.
pub fn sample_perturb_params(
    seed: u64,
    config: &PerturbConfig,
) -> Result<(CosinePerturbParams, AffineParams)> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cosine = CosinePerturbParams::zero();
    for part in 1..=MAX_PART {
        *cosine.coeffs_mut(part) = CosineCoeffs {
            k1: draw(&mut rng, config.k_range),
            k2: draw(&mut rng, config.k_range),
            alpha1: draw(&mut rng, config.alpha_range),
            alpha2: draw(&mut rng, config.alpha_range),
            beta1: draw(&mut rng, config.beta_range),
            beta2: draw(&mut rng, config.beta_range),
        };
    }
    let affine = AffineParams {
        rotation: draw(&mut rng, config.rotation_range),
        translate_x: draw(&mut rng, config.translate_range),
        translate_y: draw(&mut rng, config.translate_range),
        scale: draw(&mut rng, config.scale_range),
        shear_x: draw(&mut rng, config.shear_range),
        shear_y: draw(&mut rng, config.shear_range),
    };
    Ok((cosine, affine))
}
