use std::path::Path;

use crate::error::{Error, Result};

use super::{png, BinaryMask};

/// Magic bytes opening a `.dwfl` flow file.
pub const FLOW_MAGIC: &[u8; 4] = b"DWFL";
/// Version written when source and target extents coincide.
pub const FLOW_FORMAT_VERSION: u16 = 1;
/// Version carrying an explicit source extent after the target extent.
const FLOW_FORMAT_VERSION_SOURCE: u16 = 2;
/// Stored coordinates of invalid pixels.
const INVALID_SENTINEL: f32 = -1.0;

/// Backward sampling field: for each target pixel, the continuous source
/// coordinate to sample, or `None` where no correspondence exists.
///
/// Valid coordinates always lie in `[0, source_width - 1] x [0, source_height - 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowField {
    width: usize,
    height: usize,
    source_width: usize,
    source_height: usize,
    coords: Vec<Option<[f64; 2]>>,
}

impl FlowField {
    pub fn new(
        width: usize,
        height: usize,
        source: (usize, usize),
        coords: Vec<Option<[f64; 2]>>,
    ) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        super::check_dims(source.0, source.1)?;
        super::check_len(n, coords.len())?;
        let (max_x, max_y) = ((source.0 - 1) as f64, (source.1 - 1) as f64);
        for (i, c) in coords.iter().enumerate() {
            if let Some([x, y]) = *c {
                if !(0.0..=max_x).contains(&x) || !(0.0..=max_y).contains(&y) {
                    return Err(Error::InvalidFlow(format!(
                        "pixel {i} samples ({x}, {y}) outside the {}x{} source",
                        source.0, source.1
                    )));
                }
            }
        }
        Ok(Self {
            width,
            height,
            source_width: source.0,
            source_height: source.1,
            coords,
        })
    }

    /// Builds a field from `f(x, y)`.
    pub fn from_fn(
        width: usize,
        height: usize,
        source: (usize, usize),
        mut f: impl FnMut(usize, usize) -> Option<[f64; 2]>,
    ) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        let mut coords = Vec::with_capacity(n);
        for y in 0..height {
            for x in 0..width {
                coords.push(f(x, y));
            }
        }
        Self::new(width, height, source, coords)
    }

    pub(crate) fn from_parts(
        width: usize,
        height: usize,
        source: (usize, usize),
        coords: Vec<Option<[f64; 2]>>,
    ) -> Self {
        debug_assert_eq!(coords.len(), width * height);
        Self {
            width,
            height,
            source_width: source.0,
            source_height: source.1,
            coords,
        }
    }

    /// Every pixel samples itself.
    pub fn identity(width: usize, height: usize) -> Result<Self> {
        Self::from_fn(width, height, (width, height), |x, y| {
            Some([x as f64, y as f64])
        })
    }

    pub fn invalid(width: usize, height: usize, source: (usize, usize)) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        Self::new(width, height, source, vec![None; n])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Extent of the raster this field samples from.
    pub fn source_dims(&self) -> (usize, usize) {
        (self.source_width, self.source_height)
    }

    pub fn coords(&self) -> &[Option<[f64; 2]>] {
        &self.coords
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<[f64; 2]> {
        self.coords[y * self.width + x]
    }

    /// `source - target` offset at a valid pixel.
    pub fn displacement(&self, x: usize, y: usize) -> Option<[f64; 2]> {
        self.get(x, y)
            .map(|[sx, sy]| [sx - x as f64, sy - y as f64])
    }

    pub fn valid_mask(&self) -> BinaryMask {
        BinaryMask::from_parts(
            self.width,
            self.height,
            self.coords.iter().map(Option::is_some).collect(),
        )
    }

    pub fn valid_count(&self) -> usize {
        self.coords.iter().filter(|c| c.is_some()).count()
    }

    /// The field as it reads back from disk: coordinates rounded to `f32`.
    pub fn quantize(&self) -> FlowField {
        let coords = self
            .coords
            .iter()
            .map(|c| c.map(|[x, y]| [f64::from(x as f32), f64::from(y as f32)]))
            .collect();
        Self::from_parts(self.width, self.height, self.source_dims(), coords)
    }

    /// Serialises to the `.dwfl` binary layout (little-endian):
    /// magic `DWFL`, version `u16`, width `u32`, height `u32`, then
    /// `height * width` pairs of `f32` `(src_x, src_y)`, then one validity byte
    /// per pixel. When the source extent differs from the target extent,
    /// version 2 is written with source width and height (`u32` each) inserted
    /// after the target height.
    pub fn encode(&self) -> Vec<u8> {
        let n = self.coords.len();
        let same_extent = self.source_dims() == self.dims();
        let mut out = Vec::with_capacity(22 + n * 9);
        out.extend_from_slice(FLOW_MAGIC);
        let version = if same_extent {
            FLOW_FORMAT_VERSION
        } else {
            FLOW_FORMAT_VERSION_SOURCE
        };
        out.extend_from_slice(&version.to_le_bytes());
        out.extend_from_slice(&(self.width as u32).to_le_bytes());
        out.extend_from_slice(&(self.height as u32).to_le_bytes());
        if !same_extent {
            out.extend_from_slice(&(self.source_width as u32).to_le_bytes());
            out.extend_from_slice(&(self.source_height as u32).to_le_bytes());
        }
        for c in &self.coords {
            let [x, y] = c.map_or([INVALID_SENTINEL; 2], |[x, y]| [x as f32, y as f32]);
            out.extend_from_slice(&x.to_le_bytes());
            out.extend_from_slice(&y.to_le_bytes());
        }
        out.extend(self.coords.iter().map(|c| u8::from(c.is_some())));
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != FLOW_MAGIC {
            return Err(Error::Format("missing DWFL magic".into()));
        }
        let version = u16::from_le_bytes(r.array()?);
        let width = u32::from_le_bytes(r.array()?) as usize;
        let height = u32::from_le_bytes(r.array()?) as usize;
        let source = match version {
            FLOW_FORMAT_VERSION => (width, height),
            FLOW_FORMAT_VERSION_SOURCE => (
                u32::from_le_bytes(r.array()?) as usize,
                u32::from_le_bytes(r.array()?) as usize,
            ),
            v => return Err(Error::Format(format!("unsupported flow version {v}"))),
        };
        let n = width
            .checked_mul(height)
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Format(format!("bad flow extent {width}x{height}")))?;
        if r.remaining() != n * 9 {
            return Err(Error::Format(format!(
                "flow payload is {} bytes, expected {}",
                r.remaining(),
                n * 9
            )));
        }
        let pairs = r.take(n * 8)?;
        let validity = r.take(n)?;
        let mut coords = Vec::with_capacity(n);
        for (pair, &flag) in pairs.chunks_exact(8).zip(validity) {
            let x = f32::from_le_bytes(pair[..4].try_into().unwrap());
            let y = f32::from_le_bytes(pair[4..].try_into().unwrap());
            coords.push(match flag {
                0 => None,
                1 => Some([f64::from(x), f64::from(y)]),
                b => return Err(Error::Format(format!("validity byte {b} is not 0/1"))),
            });
        }
        Self::new(width, height, source, coords).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::decode(&png::read_file(path.as_ref())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        png::write_file(path.as_ref(), &self.encode())
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos + n;
        let slice = self
            .bytes
            .get(self.pos..end)
            .ok_or_else(|| Error::Format("truncated flow file".into()))?;
        self.pos = end;
        Ok(slice)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().unwrap())
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }
}
