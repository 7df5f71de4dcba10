use std::path::Path;

use crate::error::{Error, Result};

use super::{png, BinaryMask};

/// Human-parse label. The discriminant is the on-disk id.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Label {
    #[default]
    Background = 0,
    Top = 1,
    Hair = 2,
    Pants = 3,
    Skirt = 4,
    Face = 5,
    Arms = 6,
    Legs = 7,
}

impl Label {
    pub const ALL: [Label; 8] = [
        Label::Background,
        Label::Top,
        Label::Hair,
        Label::Pants,
        Label::Skirt,
        Label::Face,
        Label::Arms,
        Label::Legs,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Self::ALL
            .get(usize::from(id))
            .copied()
            .ok_or(Error::UnknownLabel(id))
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Background => "background",
            Label::Top => "top",
            Label::Hair => "hair",
            Label::Pants => "pants",
            Label::Skirt => "skirt",
            Label::Face => "face",
            Label::Arms => "arms",
            Label::Legs => "legs",
        }
    }
}

/// Per-pixel semantic labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseMap {
    width: usize,
    height: usize,
    labels: Vec<Label>,
}

impl ParseMap {
    pub fn new(width: usize, height: usize, labels: Vec<Label>) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        super::check_len(n, labels.len())?;
        Ok(Self {
            width,
            height,
            labels,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> Label,
    ) -> Result<Self> {
        let n = super::check_dims(width, height)?;
        let mut labels = Vec::with_capacity(n);
        for y in 0..height {
            for x in 0..width {
                labels.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            labels,
        })
    }

    pub(crate) fn from_parts(width: usize, height: usize, labels: Vec<Label>) -> Self {
        Self {
            width,
            height,
            labels,
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

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Label {
        self.labels[y * self.width + x]
    }

    /// Segment mask `M^i` for one label.
    pub fn mask_of(&self, label: Label) -> BinaryMask {
        BinaryMask::from_parts(
            self.width,
            self.height,
            self.labels.iter().map(|&l| l == label).collect(),
        )
    }

    /// Single-channel 8-bit PNG holding label ids 0..=7.
    pub fn encode_png(&self) -> Result<Vec<u8>> {
        let bytes = self.labels.iter().map(|l| l.id()).collect();
        png::encode_gray(self.width, self.height, bytes)
    }

    pub fn decode_png(bytes: &[u8]) -> Result<Self> {
        let img = png::decode(bytes)?;
        if img.color().has_color() {
            return Err(Error::Format("parse map must be single-channel".into()));
        }
        let img = img.to_luma8();
        let (w, h) = (img.width() as usize, img.height() as usize);
        let labels = img
            .into_raw()
            .into_iter()
            .map(Label::from_id)
            .collect::<Result<Vec<_>>>()?;
        Self::new(w, h, labels)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::decode_png(&png::read_file(path.as_ref())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        png::write_file(path.as_ref(), &self.encode_png()?)
    }
}
