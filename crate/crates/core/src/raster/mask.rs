use std::path::Path;

use crate::error::Result;

use super::png;

/// Per-pixel boolean selector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        super::check_len(n, data.len())?;
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: bool) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            data: vec![value; n],
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        let mut data = Vec::with_capacity(n);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub(crate) fn from_parts(width: usize, height: usize, data: Vec<bool>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
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

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }

    /// Number of set pixels.
    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.data.iter().any(|&b| b)
    }

    pub fn complement(&self) -> BinaryMask {
        Self::from_parts(
            self.width,
            self.height,
            self.data.iter().map(|b| !b).collect(),
        )
    }

    /// Pixel-wise AND. Panics if dimensions differ.
    pub fn and(&self, other: &BinaryMask) -> BinaryMask {
        assert_eq!(self.dims(), other.dims());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| *a && *b)
            .collect();
        Self::from_parts(self.width, self.height, data)
    }

    /// Pixel-wise OR. Panics if dimensions differ.
    pub fn or(&self, other: &BinaryMask) -> BinaryMask {
        assert_eq!(self.dims(), other.dims());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| *a || *b)
            .collect();
        Self::from_parts(self.width, self.height, data)
    }

    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.dims() == other.dims() && self.data.iter().zip(&other.data).all(|(a, b)| !*a || *b)
    }

    /// 8-bit grayscale PNG, 255 for set pixels.
    pub fn encode_png(&self) -> Result<Vec<u8>> {
        let bytes = self.data.iter().map(|&b| if b { 255 } else { 0 }).collect();
        png::encode_gray(self.width, self.height, bytes)
    }

    /// Any non-zero luma counts as set.
    pub fn decode_png(bytes: &[u8]) -> Result<Self> {
        let img = png::decode(bytes)?.to_luma8();
        let (w, h) = (img.width() as usize, img.height() as usize);
        Self::new(w, h, img.into_raw().into_iter().map(|b| b != 0).collect())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::decode_png(&png::read_file(path.as_ref())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        png::write_file(path.as_ref(), &self.encode_png()?)
    }
}
