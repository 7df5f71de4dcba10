use std::path::Path;

use crate::error::{Error, Result};

use super::png;

/// Highest DensePose body-part index; 0 is background.
pub const MAX_PART: u8 = 24;
/// Number of indices including background.
pub const PART_COUNT: usize = MAX_PART as usize + 1;

/// Per-pixel DensePose record: body-part chart index and `(u, v)` chart coordinates.
///
/// On disk this is an 8-bit RGB PNG with `R = part`, `G = round(255 u)` and
/// `B = round(255 v)`. In memory `u` and `v` keep full precision.
#[derive(Clone, Debug, PartialEq)]
pub struct IuvMap {
    width: usize,
    height: usize,
    parts: Vec<u8>,
    uv: Vec<[f32; 2]>,
}

impl IuvMap {
    pub fn new(width: usize, height: usize, parts: Vec<u8>, uv: Vec<[f32; 2]>) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        super::check_len(n, parts.len())?;
        super::check_len(n, uv.len())?;
        for (i, (&p, &[u, v])) in parts.iter().zip(&uv).enumerate() {
            if p > MAX_PART {
                return Err(Error::PartOutOfRange(p));
            }
            for value in [u, v] {
                if !(0.0..=1.0).contains(&value) || (p == 0 && value != 0.0) {
                    return Err(Error::ValueOutOfRange {
                        index: i,
                        value: f64::from(value),
                    });
                }
            }
        }
        Ok(Self {
            width,
            height,
            parts,
            uv,
        })
    }

    /// Builds a map from `f(x, y) -> (part, u, v)`. Background pixels are
    /// normalised to `u = v = 0`.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> (u8, f32, f32),
    ) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        let mut parts = Vec::with_capacity(n);
        let mut uv = Vec::with_capacity(n);
        for y in 0..height {
            for x in 0..width {
                let (p, u, v) = f(x, y);
                parts.push(p);
                uv.push(if p == 0 { [0.0, 0.0] } else { [u, v] });
            }
        }
        Self::new(width, height, parts, uv)
    }

    /// All-background map.
    pub fn background(width: usize, height: usize) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            parts: vec![0; n],
            uv: vec![[0.0; 2]; n],
        })
    }

    pub(crate) fn from_parts(
        width: usize,
        height: usize,
        parts: Vec<u8>,
        uv: Vec<[f32; 2]>,
    ) -> Self {
        debug_assert_eq!(parts.len(), width * height);
        debug_assert_eq!(uv.len(), width * height);
        Self {
            width,
            height,
            parts,
            uv,
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

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    pub fn uv(&self) -> &[[f32; 2]] {
        &self.uv
    }

    #[inline]
    pub fn part(&self, x: usize, y: usize) -> u8 {
        self.parts[y * self.width + x]
    }

    #[inline]
    pub fn uv_at(&self, x: usize, y: usize) -> [f32; 2] {
        self.uv[y * self.width + x]
    }

    /// Mask of non-background pixels.
    pub fn foreground(&self) -> super::BinaryMask {
        super::BinaryMask::from_parts(
            self.width,
            self.height,
            self.parts.iter().map(|&p| p != 0).collect(),
        )
    }

    /// The map as it reads back after a PNG round trip.
    pub fn quantize(&self) -> IuvMap {
        let uv = self
            .uv
            .iter()
            .map(|&[u, v]| {
                [
                    png::from_byte(png::to_byte(u)),
                    png::from_byte(png::to_byte(v)),
                ]
            })
            .collect();
        Self::from_parts(self.width, self.height, self.parts.clone(), uv)
    }

    pub fn encode_png(&self) -> Result<Vec<u8>> {
        let mut bytes = Vec::with_capacity(self.parts.len() * 3);
        for (&p, &[u, v]) in self.parts.iter().zip(&self.uv) {
            bytes.extend_from_slice(&[p, png::to_byte(u), png::to_byte(v)]);
        }
        png::encode_rgb(self.width, self.height, bytes)
    }

    pub fn decode_png(bytes: &[u8]) -> Result<Self> {
        let img = png::decode(bytes)?.to_rgb8();
        let (w, h) = (img.width() as usize, img.height() as usize);
        let raw = img.into_raw();
        let mut parts = Vec::with_capacity(w * h);
        let mut uv = Vec::with_capacity(w * h);
        for px in raw.chunks_exact(3) {
            if px[0] > MAX_PART {
                return Err(Error::Format(format!(
                    "IUV red channel {} exceeds part index {MAX_PART}",
                    px[0]
                )));
            }
            parts.push(px[0]);
            uv.push(if px[0] == 0 {
                [0.0, 0.0]
            } else {
                [png::from_byte(px[1]), png::from_byte(px[2])]
            });
        }
        Self::new(w, h, parts, uv)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::decode_png(&png::read_file(path.as_ref())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        png::write_file(path.as_ref(), &self.encode_png()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rgb_of(map: &IuvMap) -> Vec<u8> {
        let bytes = map.encode_png().unwrap();
        png::decode(&bytes).unwrap().to_rgb8().into_raw()
    }

    #[test]
    fn encodes_endpoint_pixels() {
        let map = IuvMap::new(2, 1, vec![0, 1], vec![[0.0, 0.0], [1.0, 1.0]]).unwrap();
        assert_eq!(rgb_of(&map), vec![0, 0, 0, 1, 255, 255]);
    }

    #[test]
    fn decodes_direct_inverse() {
        let bytes = png::encode_rgb(1, 1, vec![3, 128, 64]).unwrap();
        let map = IuvMap::decode_png(&bytes).unwrap();
        assert_eq!(map.part(0, 0), 3);
        assert_eq!(map.uv_at(0, 0), [128.0 / 255.0, 64.0 / 255.0]);
    }

    #[test]
    fn rejects_out_of_range_part() {
        let bytes = png::encode_rgb(1, 1, vec![25, 0, 0]).unwrap();
        assert!(matches!(IuvMap::decode_png(&bytes), Err(Error::Format(_))));
        assert!(IuvMap::decode_png(b"not a png").is_err());
    }

    #[test]
    fn all_zero_image_is_background() {
        let bytes = png::encode_rgb(3, 2, vec![0; 18]).unwrap();
        let map = IuvMap::decode_png(&bytes).unwrap();
        assert_eq!(map, IuvMap::background(3, 2).unwrap());
    }

    #[test]
    fn constructor_invariants() {
        assert!(IuvMap::new(1, 1, vec![25], vec![[0.1, 0.1]]).is_err());
        assert!(IuvMap::new(1, 1, vec![0], vec![[0.1, 0.0]]).is_err());
        assert!(IuvMap::new(1, 1, vec![2], vec![[1.1, 0.0]]).is_err());
        assert!(IuvMap::background(0, 1).is_err());
    }

    #[test]
    fn random_maps_round_trip_to_quantized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (w, h) = (rng.random_range(1..20), rng.random_range(1..20));
            let map = IuvMap::from_fn(w, h, |_, _| {
                (rng.random_range(0..=MAX_PART), rng.random(), rng.random())
            })
            .unwrap();
            let back = IuvMap::decode_png(&map.encode_png().unwrap()).unwrap();
            assert_eq!(back, map.quantize());
        }
    }
}
