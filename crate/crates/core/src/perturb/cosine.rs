use crate::error::Result;
use crate::kv;
use crate::raster::{IuvMap, MAX_PART};

/// Coefficients for one part chart:
/// `u' = u + k1 cos(alpha1 u + beta1)`, `v' = v + k2 cos(alpha2 v + beta2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CosineCoeffs {
    pub k1: f64,
    pub k2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
}

/// Independent cosine coefficients for each of the 24 part charts.
#[derive(Clone, Debug, PartialEq)]
pub struct CosinePerturbParams {
    parts: [CosineCoeffs; MAX_PART as usize],
}

impl CosinePerturbParams {
    /// All amplitudes zero: the identity perturbation.
    pub fn zero() -> Self {
        Self {
            parts: [CosineCoeffs::default(); MAX_PART as usize],
        }
    }

    /// The same coefficients on every part.
    pub fn uniform(coeffs: CosineCoeffs) -> Self {
        Self {
            parts: [coeffs; MAX_PART as usize],
        }
    }

    /// Coefficients for `part` in `1..=24`.
    pub fn coeffs(&self, part: u8) -> &CosineCoeffs {
        &self.parts[usize::from(part) - 1]
    }

    pub fn coeffs_mut(&mut self, part: u8) -> &mut CosineCoeffs {
        &mut self.parts[usize::from(part) - 1]
    }

    pub(crate) fn to_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::with_capacity(6 * self.parts.len());
        for (i, c) in self.parts.iter().enumerate() {
            let p = i + 1;
            for (name, value) in [
                ("k1", c.k1),
                ("k2", c.k2),
                ("alpha1", c.alpha1),
                ("alpha2", c.alpha2),
                ("beta1", c.beta1),
                ("beta2", c.beta2),
            ] {
                out.push((format!("cosine.{p}.{name}"), value.to_string()));
            }
        }
        out
    }

    pub(crate) fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let mut params = Self::zero();
        for part in 1..=MAX_PART {
            let get = |name: &str| kv::lookup_parse::<f64>(pairs, &format!("cosine.{part}.{name}"));
            *params.coeffs_mut(part) = CosineCoeffs {
                k1: get("k1")?,
                k2: get("k2")?,
                alpha1: get("alpha1")?,
                alpha2: get("alpha2")?,
                beta1: get("beta1")?,
                beta2: get("beta2")?,
            };
        }
        Ok(params)
    }
}

/// Displaces every foreground pixel's `(u, v)` by its part's cosine terms,
/// clamping the result to `[0, 1]`. Part indices and background are untouched.
pub fn cosine_perturb(iuv: &IuvMap, params: &CosinePerturbParams) -> IuvMap {
    let uv = iuv
        .parts()
        .iter()
        .zip(iuv.uv())
        .map(|(&part, &[u, v])| {
            if part == 0 {
                return [u, v];
            }
            let c = params.coeffs(part);
            let (u, v) = (f64::from(u), f64::from(v));
            let u2 = u + c.k1 * (c.alpha1 * u + c.beta1).cos();
            let v2 = v + c.k2 * (c.alpha2 * v + c.beta2).cos();
            [u2.clamp(0.0, 1.0) as f32, v2.clamp(0.0, 1.0) as f32]
        })
        .collect();
    IuvMap::from_parts(iuv.width(), iuv.height(), iuv.parts().to_vec(), uv)
}
