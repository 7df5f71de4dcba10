//! The warping operator: backward sampling of rasters through a [`FlowField`].

use crate::error::Result;
use crate::par;
use crate::raster::{BinaryMask, FlowField, ImageBuffer, IuvMap, Label, ParseMap};

/// The four bilinear taps `(x, y, weight)` around `(sx, sy)`. Taps past the
/// last row or column carry zero weight and are clamped onto the edge.
#[inline]
pub(crate) fn bilinear_taps(
    sx: f64,
    sy: f64,
    width: usize,
    height: usize,
) -> [(usize, usize, f64); 4] {
    let x0 = (sx.floor().max(0.0) as usize).min(width - 1);
    let y0 = (sy.floor().max(0.0) as usize).min(height - 1);
    let fx = sx - x0 as f64;
    let fy = sy - y0 as f64;
    let x1 = (x0 + 1).min(width - 1);
    let y1 = (y0 + 1).min(height - 1);
    [
        (x0, y0, (1.0 - fx) * (1.0 - fy)),
        (x1, y0, fx * (1.0 - fy)),
        (x0, y1, (1.0 - fx) * fy),
        (x1, y1, fx * fy),
    ]
}

#[inline]
fn nearest_index(t: f64, extent: usize) -> usize {
    ((t + 0.5).floor().max(0.0) as usize).min(extent - 1)
}

/// Samples `src` bilinearly at every valid flow coordinate.
///
/// Output has the flow's extent and the source's channel count. Invalid flow
/// pixels produce zeros and are cleared in the returned mask. An identity
/// flow reproduces `src` bit for bit.
pub fn warp_bilinear(src: &ImageBuffer, flow: &FlowField) -> Result<(ImageBuffer, BinaryMask)> {
    crate::raster::same_dims("warp source", flow.source_dims(), src.dims())?;
    let (w, h) = flow.dims();
    let (sw, sh) = src.dims();
    let ch = src.channels();
    let mut data = vec![0f32; w * h * ch];
    par::for_each_row(&mut data, w * ch, |y, row| {
        for x in 0..w {
            let Some([sx, sy]) = flow.get(x, y) else {
                continue;
            };
            let taps = bilinear_taps(sx, sy, sw, sh);
            for c in 0..ch {
                let v: f64 = taps
                    .iter()
                    .map(|&(tx, ty, wt)| wt * f64::from(src.get(tx, ty, c)))
                    .sum();
                row[x * ch + c] = (v as f32).clamp(0.0, 1.0);
            }
        }
    });
    Ok((ImageBuffer::from_parts(w, h, ch, data), flow.valid_mask()))
}

/// Nearest-neighbour warping for rasters whose values must not be blended.
pub trait WarpNearest: Sized {
    /// Samples `self` at the rounded flow coordinates; invalid pixels become background.
    fn warp_nearest(&self, flow: &FlowField) -> Result<Self>;
}

fn nearest_sources(flow: &FlowField, src_dims: (usize, usize)) -> Result<Vec<Option<usize>>> {
    crate::raster::same_dims("warp source", flow.source_dims(), src_dims)?;
    let (sw, sh) = src_dims;
    Ok(flow
        .coords()
        .iter()
        .map(|c| c.map(|[sx, sy]| nearest_index(sy, sh) * sw + nearest_index(sx, sw)))
        .collect())
}

impl WarpNearest for ParseMap {
    fn warp_nearest(&self, flow: &FlowField) -> Result<Self> {
        let labels = nearest_sources(flow, self.dims())?
            .into_iter()
            .map(|s| s.map_or(Label::Background, |i| self.labels()[i]))
            .collect();
        Ok(ParseMap::from_parts(flow.width(), flow.height(), labels))
    }
}

impl WarpNearest for IuvMap {
    fn warp_nearest(&self, flow: &FlowField) -> Result<Self> {
        let sources = nearest_sources(flow, self.dims())?;
        let parts = sources
            .iter()
            .map(|s| s.map_or(0, |i| self.parts()[i]))
            .collect();
        let uv = sources
            .iter()
            .map(|s| s.map_or([0.0; 2], |i| self.uv()[i]))
            .collect();
        Ok(IuvMap::from_parts(flow.width(), flow.height(), parts, uv))
    }
}

impl WarpNearest for BinaryMask {
    fn warp_nearest(&self, flow: &FlowField) -> Result<Self> {
        let data = nearest_sources(flow, self.dims())?
            .into_iter()
            .map(|s| s.is_some_and(|i| self.data()[i]))
            .collect();
        Ok(BinaryMask::from_parts(flow.width(), flow.height(), data))
    }
}

/// Free-function form of [`WarpNearest::warp_nearest`].
pub fn warp_nearest<T: WarpNearest>(src: &T, flow: &FlowField) -> Result<T> {
    src.warp_nearest(flow)
}

/// Chains two backward flows: `result(p) = inner(outer(p))`.
///
/// `outer` must sample a raster of `inner`'s extent. `inner` is interpolated
/// bilinearly, and the result is invalid wherever `outer` is invalid or any
/// tap with non-zero weight lands on an invalid `inner` pixel.
pub fn compose_flows(outer: &FlowField, inner: &FlowField) -> Result<FlowField> {
    crate::raster::same_dims("flow composition", outer.source_dims(), inner.dims())?;
    let (w, h) = outer.dims();
    let (iw, ih) = inner.dims();
    let (sw, sh) = inner.source_dims();
    let rows = par::map_range(h, |y| {
        (0..w)
            .map(|x| {
                let [ox, oy] = outer.get(x, y)?;
                let mut acc = [0.0f64; 2];
                for (tx, ty, wt) in bilinear_taps(ox, oy, iw, ih) {
                    if wt == 0.0 {
                        continue;
                    }
                    let [ix, iy] = inner.get(tx, ty)?;
                    acc[0] += wt * ix;
                    acc[1] += wt * iy;
                }
                Some([
                    acc[0].clamp(0.0, sw as f64 - 1.0),
                    acc[1].clamp(0.0, sh as f64 - 1.0),
                ])
            })
            .collect::<Vec<_>>()
    });
    Ok(FlowField::from_parts(
        w,
        h,
        (sw, sh),
        rows.into_iter().flatten().collect(),
    ))
}
