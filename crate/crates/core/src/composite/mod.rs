//! Erosion-band compositing of a warped garment onto an undressed person.

mod inpaint;
mod morphology;

pub use self::inpaint::{
    export_inpaint_job, read_inpaint_job, Condition, ConditionKind, InpaintJob, InpaintPrompt,
    JobBundle,
};
pub use self::morphology::{erode, erode_with, Border};

use serde::{Deserialize, Serialize};

use crate::raster::{same_dims, BinaryMask, ImageBuffer, Label, ParseMap};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompositeConfig {
    /// Erosion radius in pixels, applied to both the garment mask and its complement.
    pub radius: usize,
}

impl Default for CompositeConfig {
    fn default() -> Self {
        Self { radius: 5 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositeResult {
    pub composite: ImageBuffer,
    /// Band owned by neither eroded region. Zero in `composite`.
    pub refine_mask: BinaryMask,
    /// Eroded garment mask; these pixels came from the warped garment.
    pub garment_coverage: BinaryMask,
}

/// Garment where the eroded mask is set, person where the eroded complement is set,
/// zeros in between.
///
/// Erosion here ignores the raster border, so a mask touching the image edge
/// does not open a band along it.
pub fn composite_tryon(
    undressed: &ImageBuffer,
    warped_garment: &ImageBuffer,
    garment_mask: &BinaryMask,
    radius: usize,
) -> Result<CompositeResult> {
    same_dims("warped garment", undressed.dims(), warped_garment.dims())?;
    same_dims("garment mask", undressed.dims(), garment_mask.dims())?;
    if undressed.channels() != warped_garment.channels() {
        return Err(Error::Channels(warped_garment.channels()));
    }
    let garment = erode_with(garment_mask, radius, Border::Ignore);
    let person = erode_with(&garment_mask.complement(), radius, Border::Ignore);
    let (w, h) = undressed.dims();
    let ch = undressed.channels();
    let mut data = vec![0f32; w * h * ch];
    let mut band = vec![false; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let from = if garment.get(x, y) {
                warped_garment.pixel(x, y)
            } else if person.get(x, y) {
                undressed.pixel(x, y)
            } else {
                band[i] = true;
                continue;
            };
            data[i * ch..(i + 1) * ch].copy_from_slice(from);
        }
    }
    Ok(CompositeResult {
        composite: ImageBuffer::from_parts(w, h, ch, data),
        refine_mask: BinaryMask::from_parts(w, h, band),
        garment_coverage: garment,
    })
}

/// Copies every face-labelled pixel of `original` into `result`.
pub fn preserve_face(
    result: &ImageBuffer,
    original: &ImageBuffer,
    parse: &ParseMap,
) -> Result<ImageBuffer> {
    same_dims("original", result.dims(), original.dims())?;
    same_dims("parse", result.dims(), parse.dims())?;
    if result.channels() != original.channels() {
        return Err(Error::Channels(original.channels()));
    }
    let ch = result.channels();
    let mut data = result.data().to_vec();
    for (i, &label) in parse.labels().iter().enumerate() {
        if label == Label::Face {
            data[i * ch..(i + 1) * ch].copy_from_slice(&original.data()[i * ch..(i + 1) * ch]);
        }
    }
    Ok(ImageBuffer::from_parts(
        result.width(),
        result.height(),
        ch,
        data,
    ))
}
