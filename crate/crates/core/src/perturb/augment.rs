use crate::affine::{affine_to_flow, AffineParams};
use crate::error::Result;
use crate::raster::{BinaryMask, ImageBuffer};
use crate::warp::{warp_bilinear, WarpNearest};

/// Moves one segment of `image` by an affine map about the image centre.
///
/// Pixels covered by the moved segment take the warped content, pixels the
/// segment vacated become zero, and everything else is left as is. Returns
/// the new image and the moved segment mask.
pub fn augment_segment(
    image: &ImageBuffer,
    segment: &BinaryMask,
    params: &AffineParams,
) -> Result<(ImageBuffer, BinaryMask)> {
    crate::raster::same_dims("segment mask", image.dims(), segment.dims())?;
    params.validate()?;
    if segment.is_empty() {
        return Ok((image.clone(), segment.clone()));
    }
    let (w, h) = image.dims();
    let flow = affine_to_flow(params, w, h)?;
    let moved = segment.warp_nearest(&flow)?;
    let (warped, _) = warp_bilinear(image, &flow)?;

    let ch = image.channels();
    let mut data = image.data().to_vec();
    for i in 0..w * h {
        let px = &mut data[i * ch..(i + 1) * ch];
        if moved.data()[i] {
            px.copy_from_slice(&warped.data()[i * ch..(i + 1) * ch]);
        } else if segment.data()[i] {
            px.fill(0.0);
        }
    }
    Ok((ImageBuffer::from_parts(w, h, ch, data), moved))
}
