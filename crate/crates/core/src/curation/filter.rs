use std::fmt;
use std::str::FromStr;

use super::record::{CurationRecord, Occlusion, Source, Viewpoint, Zoom};
use crate::raster::ImageBuffer;
use crate::{Error, Result};

pub const TARGET_WIDTH: u32 = 320;
pub const TARGET_HEIGHT: u32 = 512;
/// Width units of the target aspect `5:8`.
const ASPECT_W: u32 = 5;
const ASPECT_H: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    MissingAnnotation,
    Viewpoint,
    Zoom,
    Occlusion,
    CustomerSource,
    NoDetection,
    Horizontal,
    Aspect,
    /// The padded crop is wider than the image.
    OutOfBounds,
}

impl RejectReason {
    pub const ALL: [RejectReason; 9] = [
        RejectReason::MissingAnnotation,
        RejectReason::Viewpoint,
        RejectReason::Zoom,
        RejectReason::Occlusion,
        RejectReason::CustomerSource,
        RejectReason::NoDetection,
        RejectReason::Horizontal,
        RejectReason::Aspect,
        RejectReason::OutOfBounds,
    ];

    pub fn code(self) -> &'static str {
        match self {
            RejectReason::MissingAnnotation => "missing_annotation",
            RejectReason::Viewpoint => "viewpoint",
            RejectReason::Zoom => "zoom",
            RejectReason::Occlusion => "occlusion",
            RejectReason::CustomerSource => "customer_source",
            RejectReason::NoDetection => "no_detection",
            RejectReason::Horizontal => "horizontal",
            RejectReason::Aspect => "aspect",
            RejectReason::OutOfBounds => "out_of_bounds",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for RejectReason {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.code() == s)
            .ok_or_else(|| Error::Format(format!("unknown reject reason {s:?}")))
    }
}

/// Padded person box in source pixels plus the output size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CropSpec {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
    pub target_width: u32,
    pub target_height: u32,
}

impl CropSpec {
    pub fn new(x: u32, y: u32, w: u32, h: u32) -> Self {
        Self {
            x,
            y,
            w,
            h,
            target_width: TARGET_WIDTH,
            target_height: TARGET_HEIGHT,
        }
    }
}

/// Annotation stage: frontal, not zoomed, slight occlusion, not customer-sourced.
/// Missing labels are checked first.
pub fn stage1(record: &CurationRecord) -> std::result::Result<(), RejectReason> {
    let (Some(viewpoint), Some(zoom), Some(occlusion), Some(source)) = (
        record.viewpoint,
        record.zoom,
        record.occlusion,
        record.source,
    ) else {
        return Err(RejectReason::MissingAnnotation);
    };
    if viewpoint != Viewpoint::Frontal {
        return Err(RejectReason::Viewpoint);
    }
    if zoom != Zoom::None {
        return Err(RejectReason::Zoom);
    }
    if occlusion != Occlusion::Slight {
        return Err(RejectReason::Occlusion);
    }
    if source == Source::Customer {
        return Err(RejectReason::CustomerSource);
    }
    Ok(())
}

pub fn stage1_filter(record: &CurationRecord) -> bool {
    stage1(record).is_ok()
}

/// Geometry stage: needs a detected, upright box no wider than 5:8, which is
/// then padded to exactly 5:8.
///
/// The padded size is `5k x 8k` with `k = ceil(h / 8)`, so the box is grown by
/// at most 7 rows. When `8k` exceeds the image height `k` drops to
/// `floor(image_height / 8)`. Padding is split evenly around the box and
/// shifted inward where it would cross the image border.
pub fn stage2_geometry(record: &CurationRecord) -> std::result::Result<CropSpec, RejectReason> {
    let b = record.bbox.ok_or(RejectReason::NoDetection)?;
    if b.w > b.h {
        return Err(RejectReason::Horizontal);
    }
    if u64::from(b.w) * u64::from(ASPECT_H) > u64::from(b.h) * u64::from(ASPECT_W) {
        return Err(RejectReason::Aspect);
    }
    let (iw, ih) = (record.image_width, record.image_height);
    let k = b.h.div_ceil(ASPECT_H).min(ih / ASPECT_H);
    let (cw, ch) = (ASPECT_W * k, ASPECT_H * k);
    if k == 0 || cw > iw {
        return Err(RejectReason::OutOfBounds);
    }
    Ok(CropSpec::new(
        place(b.x, b.w, cw, iw),
        place(b.y, b.h, ch, ih),
        cw,
        ch,
    ))
}

/// Start of a span of length `len` centred on `[start, start + size)` and
/// shifted to fit in `[0, limit)`.
fn place(start: u32, size: u32, len: u32, limit: u32) -> u32 {
    let centred = i64::from(start) - (i64::from(len) - i64::from(size)).div_euclid(2);
    centred.clamp(0, i64::from(limit - len)) as u32
}

/// Bilinear resize of the crop window to the target size, sampling at pixel
/// centres and clamping to the window.
pub fn apply_crop(image: &ImageBuffer, spec: &CropSpec) -> Result<ImageBuffer> {
    let (iw, ih) = image.dims();
    if spec.w == 0 || spec.h == 0 || spec.target_width == 0 || spec.target_height == 0 {
        return Err(Error::InvalidParameter("degenerate crop".into()));
    }
    if (spec.x + spec.w) as usize > iw || (spec.y + spec.h) as usize > ih {
        return Err(Error::InvalidParameter(format!(
            "crop {},{},{},{} outside {iw}x{ih} image",
            spec.x, spec.y, spec.w, spec.h
        )));
    }
    let (tw, th) = (spec.target_width as usize, spec.target_height as usize);
    let sx = f64::from(spec.w) / tw as f64;
    let sy = f64::from(spec.h) / th as f64;
    let axis = |o: usize, scale: f64, origin: u32, len: u32| -> (usize, usize, f64) {
        let t = ((o as f64 + 0.5) * scale - 0.5).clamp(0.0, f64::from(len - 1));
        let i0 = t.floor() as usize;
        let i1 = (i0 + 1).min(len as usize - 1);
        (origin as usize + i0, origin as usize + i1, t - i0 as f64)
    };
    let cols: Vec<_> = (0..tw).map(|o| axis(o, sx, spec.x, spec.w)).collect();
    let rows: Vec<_> = (0..th).map(|o| axis(o, sy, spec.y, spec.h)).collect();
    ImageBuffer::from_fn(tw, th, image.channels(), |x, y, c| {
        let (x0, x1, fx) = cols[x];
        let (y0, y1, fy) = rows[y];
        let p = |xx, yy| f64::from(image.get(xx, yy, c));
        let top = p(x0, y0) * (1.0 - fx) + p(x1, y0) * fx;
        let bottom = p(x0, y1) * (1.0 - fx) + p(x1, y1) * fx;
        ((top * (1.0 - fy) + bottom * fy) as f32).clamp(0.0, 1.0)
    })
}
