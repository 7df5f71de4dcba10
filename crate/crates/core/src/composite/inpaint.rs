use std::path::{Path, PathBuf};

use crate::kv;
use crate::raster::{png, same_dims, BinaryMask, ImageBuffer, IuvMap, ParseMap};
use crate::{Error, Result};

pub const JOB_IMAGE: &str = "image.png";
pub const JOB_MASK: &str = "mask.png";
pub const JOB_CONDITION: &str = "condition.png";
pub const JOB_META: &str = "meta.txt";

const SKIN_PROMPT: &str = "a person in a black+ strapless++ bra++++";
const SKIN_NEGATIVE: &str =
    "art, clothes, garments, long-sleeves, sleeves, cloak, loose, thick clothes, \
loose clothes, pants, shirts, skirts, dresses, long jackets, jackets, cloth between legs, \
cloth around the body, cloth around arms";
const REFINE_NEGATIVE: &str = "blurry, cracks on skins, poor shirts, poor pants, strange holes, bad legs, \
missing legs, bad arms, missing arms, bad anatomy, poorly drawn face, bad face, fused face, cloned face, \
worst face, three crus, extra crus, fused crus, worst feet, three feet, fused feet, fused thigh, \
three thighs, fused thigh, extra thigh, worst thigh, missing fingers, extra fingers, ugly fingers, \
long fingers, horn, extra eyes, huge eyes, 2girl, amputation, disconnected limbs, cartoon, cg, 3d, \
unreal, animate";

/// Text conditioning and sampler settings handed to the inpainting service.
#[derive(Clone, Debug, PartialEq)]
pub struct InpaintPrompt {
    pub prompt: String,
    pub negative_prompt: String,
    pub guidance_scale: f64,
    pub steps: u32,
}

impl InpaintPrompt {
    /// Replaces the original garment with skin. Pair with an IUV condition.
    pub fn skin() -> Self {
        Self {
            prompt: SKIN_PROMPT.into(),
            negative_prompt: SKIN_NEGATIVE.into(),
            guidance_scale: 7.5,
            steps: 20,
        }
    }

    /// Fills the composite's refine band. Pair with a parse condition.
    pub fn refine() -> Self {
        Self {
            prompt: String::new(),
            negative_prompt: REFINE_NEGATIVE.into(),
            guidance_scale: 7.5,
            steps: 20,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Condition<'a> {
    Iuv(&'a IuvMap),
    Parse(&'a ParseMap),
}

/// Owned counterpart of [`Condition`], as read back from disk.
#[derive(Clone, Debug, PartialEq)]
pub enum ConditionKind {
    Iuv(IuvMap),
    Parse(ParseMap),
}

impl Condition<'_> {
    fn dims(&self) -> (usize, usize) {
        match self {
            Condition::Iuv(m) => m.dims(),
            Condition::Parse(m) => m.dims(),
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            Condition::Iuv(_) => "iuv",
            Condition::Parse(_) => "parse",
        }
    }

    fn encode_png(&self) -> Result<Vec<u8>> {
        match self {
            Condition::Iuv(m) => m.encode_png(),
            Condition::Parse(m) => m.encode_png(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobBundle {
    pub dir: PathBuf,
    /// Mask is empty, there is nothing to inpaint.
    pub noop: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InpaintJob {
    pub image: ImageBuffer,
    pub mask: BinaryMask,
    pub condition: ConditionKind,
    pub prompt: InpaintPrompt,
    pub noop: bool,
}

/// Writes `image.png`, `mask.png`, `condition.png` and `meta.txt` into `out_dir`,
/// creating it if needed.
pub fn export_inpaint_job(
    image: &ImageBuffer,
    mask: &BinaryMask,
    condition: Condition<'_>,
    prompt: &InpaintPrompt,
    out_dir: impl AsRef<Path>,
) -> Result<JobBundle> {
    same_dims("inpaint mask", image.dims(), mask.dims())?;
    same_dims("inpaint condition", image.dims(), condition.dims())?;
    if prompt.prompt.contains('\n') || prompt.negative_prompt.contains('\n') {
        return Err(Error::InvalidParameter(
            "prompts must be single-line".into(),
        ));
    }
    let dir = out_dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let noop = mask.is_empty();
    png::write_file(&dir.join(JOB_IMAGE), &image.encode_png()?)?;
    png::write_file(&dir.join(JOB_MASK), &mask.encode_png()?)?;
    png::write_file(&dir.join(JOB_CONDITION), &condition.encode_png()?)?;
    let meta = kv::render([
        ("prompt", prompt.prompt.clone()),
        ("negative_prompt", prompt.negative_prompt.clone()),
        ("guidance_scale", prompt.guidance_scale.to_string()),
        ("steps", prompt.steps.to_string()),
        ("condition", condition.tag().to_string()),
        ("noop", noop.to_string()),
    ]);
    png::write_file(&dir.join(JOB_META), meta.as_bytes())?;
    Ok(JobBundle {
        dir: dir.to_path_buf(),
        noop,
    })
}

pub fn read_inpaint_job(dir: impl AsRef<Path>) -> Result<InpaintJob> {
    let dir = dir.as_ref();
    let text = String::from_utf8(png::read_file(&dir.join(JOB_META))?)
        .map_err(|_| Error::Format("meta.txt is not UTF-8".into()))?;
    let pairs = kv::parse(&text)?;
    let condition_path = dir.join(JOB_CONDITION);
    let condition = match kv::lookup(&pairs, "condition")? {
        "iuv" => ConditionKind::Iuv(IuvMap::load(&condition_path)?),
        "parse" => ConditionKind::Parse(ParseMap::load(&condition_path)?),
        other => return Err(Error::Format(format!("unknown condition kind {other:?}"))),
    };
    Ok(InpaintJob {
        image: ImageBuffer::load(dir.join(JOB_IMAGE))?,
        mask: BinaryMask::load(dir.join(JOB_MASK))?,
        condition,
        prompt: InpaintPrompt {
            prompt: kv::lookup(&pairs, "prompt")?.to_string(),
            negative_prompt: kv::lookup(&pairs, "negative_prompt")?.to_string(),
            guidance_scale: kv::lookup_parse(&pairs, "guidance_scale")?,
            steps: kv::lookup_parse(&pairs, "steps")?,
        },
        noop: kv::lookup_parse(&pairs, "noop")?,
    })
}
