//! Raster containers shared across the crate.
//!
//! All rasters are row-major with the origin at the top-left corner, `x`
//! growing rightward and `y` downward. Every container validates its contents
//! on construction and is immutable afterwards.

mod flow;
mod image;
mod iuv;
mod mask;
mod parse;
pub(crate) mod png;

pub use self::flow::{FlowField, FLOW_FORMAT_VERSION, FLOW_MAGIC};
pub use self::image::ImageBuffer;
pub use self::iuv::{IuvMap, MAX_PART, PART_COUNT};
pub use self::mask::BinaryMask;
pub use self::parse::{Label, ParseMap};

use crate::error::{Error, Result};

pub(crate) fn check_dims(width: usize, height: usize) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyRaster { width, height });
    }
    Ok(width * height)
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::BufferLength { expected, actual });
    }
    Ok(())
}

/// Errors unless two rasters share the same `(width, height)`.
pub(crate) fn same_dims(
    context: &'static str,
    left: (usize, usize),
    right: (usize, usize),
) -> Result<()> {
    if left != right {
        return Err(Error::mismatch(context, left, right));
    }
    Ok(())
}
