use std::path::Path;

use crate::error::{Error, Result};

use super::png;

/// A 1- or 3-channel image with intensities in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f32>,
}

impl ImageBuffer {
    /// Wraps interleaved row-major samples, validating size and range.
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<f32>) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        if channels != 1 && channels != 3 {
            return Err(Error::Channels(channels));
        }
        super::check_len(n * channels, data.len())?;
        if let Some((index, &value)) = data
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::ValueOutOfRange {
                index,
                value: f64::from(value),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, channels: usize, value: f32) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        Self::new(width, height, channels, vec![value; n * channels])
    }

    /// Builds an image by evaluating `f(x, y, channel)` for every sample.
    pub fn from_fn(
        width: usize,
        height: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> f32,
    ) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        let mut data = Vec::with_capacity(n * channels);
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels {
                    data.push(f(x, y, c));
                }
            }
        }
        Self::new(width, height, channels, data)
    }

    /// Crate-internal constructor for producers that already guarantee the invariants.
    pub(crate) fn from_parts(width: usize, height: usize, channels: usize, data: Vec<f32>) -> Self {
        debug_assert_eq!(data.len(), width * height * channels);
        debug_assert!(data.iter().all(|v| (0.0..=1.0).contains(v)));
        Self {
            width,
            height,
            channels,
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

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f32 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> &[f32] {
        let i = (y * self.width + x) * self.channels;
        &self.data[i..i + self.channels]
    }

    /// Single-channel copy; 3-channel images are averaged per pixel.
    pub fn to_gray(&self) -> ImageBuffer {
        if self.channels == 1 {
            return self.clone();
        }
        let data = self
            .data
            .chunks_exact(3)
            .map(|p| ((f64::from(p[0]) + f64::from(p[1]) + f64::from(p[2])) / 3.0) as f32)
            .map(|v| v.clamp(0.0, 1.0))
            .collect();
        Self::from_parts(self.width, self.height, 1, data)
    }

    /// Grayscale intensities as `f64`, channel-averaged for colour input.
    pub(crate) fn gray_f64(&self) -> Vec<f64> {
        match self.channels {
            1 => self.data.iter().map(|&v| f64::from(v)).collect(),
            _ => self
                .data
                .chunks_exact(self.channels)
                .map(|p| p.iter().map(|&v| f64::from(v)).sum::<f64>() / self.channels as f64)
                .collect(),
        }
    }

    /// Encodes as an 8-bit grayscale or RGB PNG.
    pub fn encode_png(&self) -> Result<Vec<u8>> {
        let bytes = self.data.iter().map(|&v| png::to_byte(v)).collect();
        match self.channels {
            1 => png::encode_gray(self.width, self.height, bytes),
            _ => png::encode_rgb(self.width, self.height, bytes),
        }
    }

    /// Decodes a PNG. Grayscale inputs stay single-channel, everything else
    /// is converted to RGB (alpha is dropped).
    pub fn decode_png(bytes: &[u8]) -> Result<Self> {
        let img = png::decode(bytes)?;
        let (w, h) = (img.width() as usize, img.height() as usize);
        let (channels, raw) = if img.color().has_color() {
            (3, img.to_rgb8().into_raw())
        } else {
            (1, img.to_luma8().into_raw())
        };
        Self::new(
            w,
            h,
            channels,
            raw.into_iter().map(png::from_byte).collect(),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::decode_png(&png::read_file(path.as_ref())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        png::write_file(path.as_ref(), &self.encode_png()?)
    }
}
