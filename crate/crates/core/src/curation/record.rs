use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

macro_rules! label_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(Error::Format(format!(
                        concat!("unknown ", stringify!($name), " {:?}"),
                        s
                    ))),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

label_enum!(Viewpoint { Frontal => "frontal", Side => "side", Back => "back", NoWear => "no_wear" });
label_enum!(Zoom { None => "none", Medium => "medium", Large => "large" });
label_enum!(Occlusion { Slight => "slight", Medium => "medium", Heavy => "heavy" });
label_enum!(Source { Shop => "shop", Customer => "customer" });

/// Axis-aligned pixel box, `x, y` top-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BBox {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl fmt::Display for BBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x, self.y, self.w, self.h)
    }
}

impl FromStr for BBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        let bad = || Error::Format(format!("bad box {s:?}, expected x,y,w,h"));
        let [x, y, w, h] = parts.as_slice() else {
            return Err(bad());
        };
        let n = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        Ok(BBox {
            x: n(x)?,
            y: n(y)?,
            w: n(w)?,
            h: n(h)?,
        })
    }
}

/// One annotated source image. Annotation fields are optional so that missing
/// labels can be rejected with a reason rather than failing the whole batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurationRecord {
    pub id: String,
    pub viewpoint: Option<Viewpoint>,
    pub zoom: Option<Zoom>,
    pub occlusion: Option<Occlusion>,
    pub source: Option<Source>,
    pub bbox: Option<BBox>,
    pub image_width: u32,
    pub image_height: u32,
}

impl CurationRecord {
    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() || self.id.chars().any(char::is_whitespace) {
            return Err(Error::Format(format!(
                "record id {:?} is empty or has whitespace",
                self.id
            )));
        }
        if self.image_width == 0 || self.image_height == 0 {
            return Err(Error::Format(format!("record {}: empty image", self.id)));
        }
        if let Some(b) = self.bbox {
            let inside = b.w > 0
                && b.h > 0
                && u64::from(b.x) + u64::from(b.w) <= u64::from(self.image_width)
                && u64::from(b.y) + u64::from(b.h) <= u64::from(self.image_height);
            if !inside {
                return Err(Error::Format(format!(
                    "record {}: box {b} is empty or outside {}x{}",
                    self.id, self.image_width, self.image_height
                )));
            }
        }
        Ok(())
    }

    /// Parses one line of space-separated `key=value` tokens:
    ///
    /// ```text
    /// id=img_0001 viewpoint=frontal zoom=none occlusion=slight source=shop bbox=40,12,100,200 image=320x480
    /// ```
    ///
    /// `id` and `image` are required. Annotation keys and `bbox` may be
    /// omitted or given as `-`.
    pub fn parse_line(line: &str) -> Result<Self> {
        let mut id = None;
        let mut image = None;
        let mut record = CurationRecord {
            id: String::new(),
            viewpoint: None,
            zoom: None,
            occlusion: None,
            source: None,
            bbox: None,
            image_width: 0,
            image_height: 0,
        };
        fn opt<T: FromStr<Err = Error>>(v: &str) -> Result<Option<T>> {
            if v == "-" {
                Ok(None)
            } else {
                v.parse().map(Some)
            }
        }
        for token in line.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("token {token:?} is not key=value")))?;
            match key {
                "id" => id = Some(value.to_string()),
                "viewpoint" => record.viewpoint = opt(value)?,
                "zoom" => record.zoom = opt(value)?,
                "occlusion" => record.occlusion = opt(value)?,
                "source" => record.source = opt(value)?,
                "bbox" => record.bbox = opt(value)?,
                "image" => {
                    let (w, h) = value
                        .split_once('x')
                        .and_then(|(w, h)| Some((w.parse().ok()?, h.parse().ok()?)))
                        .ok_or_else(|| {
                            Error::Format(format!("bad image size {value:?}, expected WxH"))
                        })?;
                    image = Some((w, h));
                }
                other => return Err(Error::Format(format!("unknown record key {other:?}"))),
            }
        }
        record.id = id.ok_or_else(|| Error::Format("record without id".into()))?;
        (record.image_width, record.image_height) = image
            .ok_or_else(|| Error::Format(format!("record {}: missing image size", record.id)))?;
        record.validate()?;
        Ok(record)
    }

    pub fn to_line(&self) -> String {
        fn show<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
        }
        format!(
            "id={} viewpoint={} zoom={} occlusion={} source={} bbox={} image={}x{}",
            self.id,
            show(&self.viewpoint),
            show(&self.zoom),
            show(&self.occlusion),
            show(&self.source),
            show(&self.bbox),
            self.image_width,
            self.image_height
        )
    }
}

/// Parses a record file: one record per line, blank lines and `#` comments skipped.
pub fn parse_records(text: &str) -> Result<Vec<CurationRecord>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let record = CurationRecord::parse_line(line)
            .map_err(|e| Error::Format(format!("line {}: {e}", n + 1)))?;
        out.push(record);
    }
    Ok(out)
}
