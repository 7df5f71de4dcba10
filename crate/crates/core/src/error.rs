use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("raster must be non-empty, got {width}x{height}")]
    EmptyRaster { width: usize, height: usize },

    #[error("expected {expected} values, got {actual}")]
    BufferLength { expected: usize, actual: usize },

    #[error("unsupported channel count {0} (expected 1 or 3)")]
    Channels(usize),

    #[error("value {value} at index {index} is outside [0, 1]")]
    ValueOutOfRange { index: usize, value: f64 },

    #[error("body-part index {0} is outside 0..=24")]
    PartOutOfRange(u8),

    #[error("label id {0} is not a known parse label")]
    UnknownLabel(u8),

    #[error("dimension mismatch: {context} ({left:?} vs {right:?})")]
    DimensionMismatch {
        context: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid flow: {0}")]
    InvalidFlow(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("region selects no pixels")]
    EmptyRegion,

    #[error("flow field has no valid pixel to propagate")]
    NoValidPixels,

    #[error("garment index is empty: no non-background pixels to match against")]
    EmptyIndex,

    #[error("image {width}x{height} is smaller than the {window}x{window} window")]
    ImageTooSmall {
        width: usize,
        height: usize,
        window: usize,
    },

    #[error("need at least 2 ids to build unpaired tuples, got {0}")]
    TooFewIds(usize),

    #[error("duplicate id {0:?}")]
    DuplicateId(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn mismatch(
        context: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    ) -> Self {
        Error::DimensionMismatch {
            context,
            left,
            right,
        }
    }
}
