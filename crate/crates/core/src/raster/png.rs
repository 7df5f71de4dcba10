use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, GrayImage, ImageFormat, RgbImage};

use crate::error::{Error, Result};

pub(crate) fn encode_gray(width: usize, height: usize, bytes: Vec<u8>) -> Result<Vec<u8>> {
    let img = GrayImage::from_raw(width as u32, height as u32, bytes)
        .ok_or_else(|| Error::Format("gray buffer size mismatch".into()))?;
    encode(DynamicImage::ImageLuma8(img))
}

pub(crate) fn encode_rgb(width: usize, height: usize, bytes: Vec<u8>) -> Result<Vec<u8>> {
    let img = RgbImage::from_raw(width as u32, height as u32, bytes)
        .ok_or_else(|| Error::Format("rgb buffer size mismatch".into()))?;
    encode(DynamicImage::ImageRgb8(img))
}

fn encode(img: DynamicImage) -> Result<Vec<u8>> {
    let mut out = Cursor::new(Vec::new());
    img.write_to(&mut out, ImageFormat::Png)?;
    Ok(out.into_inner())
}

pub(crate) fn decode(bytes: &[u8]) -> Result<DynamicImage> {
    image::load_from_memory_with_format(bytes, ImageFormat::Png)
        .map_err(|e| Error::Format(format!("malformed PNG: {e}")))
}

pub(crate) fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub(crate) fn to_byte(value: f32) -> u8 {
    (f64::from(value) * 255.0).round().clamp(0.0, 255.0) as u8
}

pub(crate) fn from_byte(byte: u8) -> f32 {
    f32::from(byte) / 255.0
}
