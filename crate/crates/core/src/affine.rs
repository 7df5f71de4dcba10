//! Affine maps about the raster centre and their backward flows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::raster::FlowField;

/// Affine perturbation, applied about the raster centre.
///
/// Angles are in degrees; with `y` pointing down a positive rotation turns
/// the image clockwise on screen. Translations are fractions of the raster
/// width and height.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineParams {
    pub rotation: f64,
    pub translate_x: f64,
    pub translate_y: f64,
    pub scale: f64,
    pub shear_x: f64,
    pub shear_y: f64,
}

impl Default for AffineParams {
    fn default() -> Self {
        Self::identity()
    }
}

impl AffineParams {
    pub const fn identity() -> Self {
        Self {
            rotation: 0.0,
            translate_x: 0.0,
            translate_y: 0.0,
            scale: 1.0,
            shear_x: 0.0,
            shear_y: 0.0,
        }
    }

    pub fn translation(translate_x: f64, translate_y: f64) -> Self {
        Self {
            translate_x,
            translate_y,
            ..Self::identity()
        }
    }

    pub fn rotation(degrees: f64) -> Self {
        Self {
            rotation: degrees,
            ..Self::identity()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let values = [
            self.rotation,
            self.translate_x,
            self.translate_y,
            self.scale,
            self.shear_x,
            self.shear_y,
        ];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "affine parameters must be finite".into(),
            ));
        }
        if self.scale <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "scale must be positive, got {}",
                self.scale
            )));
        }
        if self.shear_x.abs() >= 45.0 || self.shear_y.abs() >= 45.0 {
            return Err(Error::InvalidParameter(
                "shear must lie strictly within ±45°".into(),
            ));
        }
        Ok(())
    }
}

/// `p' = matrix * p + offset` in pixel coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineTransform {
    pub matrix: [[f64; 2]; 2],
    pub offset: [f64; 2],
}

impl AffineTransform {
    pub const IDENTITY: Self = Self {
        matrix: [[1.0, 0.0], [0.0, 1.0]],
        offset: [0.0, 0.0],
    };

    /// Rotation, shear and scale about the centre of a `width x height`
    /// raster, followed by the translation.
    pub fn from_params(params: &AffineParams, width: usize, height: usize) -> Result<Self> {
        params.validate()?;
        let (s, c) = params.rotation.to_radians().sin_cos();
        let rot = [[c, -s], [s, c]];
        let shear = [
            [1.0, params.shear_x.to_radians().tan()],
            [params.shear_y.to_radians().tan(), 1.0],
        ];
        let rs = mul(rot, shear);
        let matrix = [
            [rs[0][0] * params.scale, rs[0][1] * params.scale],
            [rs[1][0] * params.scale, rs[1][1] * params.scale],
        ];
        let centre = [(width as f64 - 1.0) / 2.0, (height as f64 - 1.0) / 2.0];
        let mc = apply(matrix, centre);
        let offset = [
            centre[0] - mc[0] + params.translate_x * width as f64,
            centre[1] - mc[1] + params.translate_y * height as f64,
        ];
        Ok(Self { matrix, offset })
    }

    pub fn translation(dx: f64, dy: f64) -> Self {
        Self {
            offset: [dx, dy],
            ..Self::IDENTITY
        }
    }

    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        let q = apply(self.matrix, p);
        [q[0] + self.offset[0], q[1] + self.offset[1]]
    }

    pub fn inverse(&self) -> Option<Self> {
        let [[a, b], [c, d]] = self.matrix;
        let det = a * d - b * c;
        if det.abs() < 1e-12 || !det.is_finite() {
            return None;
        }
        let matrix = [[d / det, -b / det], [-c / det, a / det]];
        let t = apply(matrix, self.offset);
        Some(Self {
            matrix,
            offset: [-t[0], -t[1]],
        })
    }

    /// Backward flow realising this map on a `width x height` raster: each
    /// target pixel samples its preimage. Preimages more than half a pixel
    /// outside the raster are invalid.
    pub fn to_flow(&self, width: usize, height: usize) -> Result<FlowField> {
        crate::raster::check_dims(width, height)?;
        let inv = self
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("affine transform is not invertible".into()))?;
        let rows = par::map_range(height, |y| {
            (0..width)
                .map(|x| {
                    let [sx, sy] = inv.apply([x as f64, y as f64]);
                    Some([resolve(sx, width)?, resolve(sy, height)?])
                })
                .collect::<Vec<_>>()
        });
        Ok(FlowField::from_parts(
            width,
            height,
            (width, height),
            rows.into_iter().flatten().collect(),
        ))
    }
}

/// Backward flow of `params` applied about the centre of a `width x height` raster.
pub fn affine_to_flow(params: &AffineParams, width: usize, height: usize) -> Result<FlowField> {
    AffineTransform::from_params(params, width, height)?.to_flow(width, height)
}

/// Border policy: a coordinate within half a pixel outside `[0, extent - 1]`
/// is clamped onto the edge, anything farther (or non-finite) is rejected.
#[inline]
pub(crate) fn resolve(t: f64, extent: usize) -> Option<f64> {
    let max = extent as f64 - 1.0;
    if t >= -0.5 && t <= max + 0.5 {
        Some(t.clamp(0.0, max))
    } else {
        None
    }
}

fn mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn apply(m: [[f64; 2]; 2], p: [f64; 2]) -> [f64; 2] {
    [
        m[0][0] * p[0] + m[0][1] * p[1],
        m[1][0] * p[0] + m[1][1] * p[1],
    ]
}
