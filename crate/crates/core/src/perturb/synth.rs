use std::path::Path;

use crate::affine::{AffineParams, AffineTransform};
use crate::correspondence::{naive_flow, CorrespondenceConfig};
use crate::error::{Error, Result};
use crate::kv;
use crate::par;
use crate::raster::{png, FlowField, ImageBuffer, IuvMap, ParseMap};
use crate::warp::{warp_bilinear, WarpNearest};

use super::{cosine_perturb, sample_perturb_params, CosinePerturbParams, PerturbConfig};

const PERTURBED_IMAGE: &str = "perturbed_image.png";
const PERTURBED_IUV: &str = "perturbed_iuv.png";
const PERTURBED_PARSE: &str = "perturbed_parse.png";
const TARGET_IMAGE: &str = "target_image.png";
const TARGET_IUV: &str = "target_iuv.png";
const TARGET_PARSE: &str = "target_parse.png";
const NAIVE_FLOW: &str = "naive_flow.dwfl";
const PARAMS: &str = "params.txt";

/// One self-supervised corrector example.
///
/// The perturbed rasters are the targets moved by `affine` after the
/// DensePose UVs were displaced by `cosine`; `naive_flow` maps target pixels
/// into the perturbed image through DensePose correspondence.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingExample {
    pub seed: u64,
    pub perturbed_image: ImageBuffer,
    pub perturbed_iuv: IuvMap,
    pub perturbed_parse: ParseMap,
    pub naive_flow: FlowField,
    pub target_image: ImageBuffer,
    pub target_iuv: IuvMap,
    pub target_parse: ParseMap,
    pub cosine: CosinePerturbParams,
    pub affine: AffineParams,
}

/// Mixes an example index into a base seed (SplitMix64 finaliser).
pub fn example_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples perturbation parameters from `seed` and synthesises an example.
pub fn synth_corrector_example(
    image: &ImageBuffer,
    iuv: &IuvMap,
    parse: &ParseMap,
    seed: u64,
    perturb: &PerturbConfig,
    correspondence: &CorrespondenceConfig,
) -> Result<TrainingExample> {
    let (cosine, affine) = sample_perturb_params(seed, perturb)?;
    let mut example = synth_with_params(image, iuv, parse, cosine, affine, correspondence)?;
    example.seed = seed;
    Ok(example)
}

/// Synthesises an example with explicit perturbation parameters.
///
/// The cosine displacement is applied first, then the affine map moves
/// image, DensePose and parse together.
pub fn synth_with_params(
    image: &ImageBuffer,
    iuv: &IuvMap,
    parse: &ParseMap,
    cosine: CosinePerturbParams,
    affine: AffineParams,
    correspondence: &CorrespondenceConfig,
) -> Result<TrainingExample> {
    crate::raster::same_dims("image vs DensePose", image.dims(), iuv.dims())?;
    crate::raster::same_dims("image vs parse", image.dims(), parse.dims())?;
    let (w, h) = image.dims();
    let moved = AffineTransform::from_params(&affine, w, h)?.to_flow(w, h)?;

    let perturbed_iuv = cosine_perturb(iuv, &cosine).warp_nearest(&moved)?;
    let (perturbed_image, _) = warp_bilinear(image, &moved)?;
    let perturbed_parse = parse.warp_nearest(&moved)?;

    let naive = naive_flow(&perturbed_iuv, iuv, correspondence)?;
    if naive.stats.empty_index || naive.flow.valid_count() == 0 {
        return Err(Error::EmptyIndex);
    }
    Ok(TrainingExample {
        seed: 0,
        perturbed_image,
        perturbed_iuv,
        perturbed_parse,
        naive_flow: naive.flow,
        target_image: image.clone(),
        target_iuv: iuv.clone(),
        target_parse: parse.clone(),
        cosine,
        affine,
    })
}

/// `n` examples with per-index seeds from [`example_seed`], computed in parallel.
pub fn synth_batch(
    image: &ImageBuffer,
    iuv: &IuvMap,
    parse: &ParseMap,
    base_seed: u64,
    n: usize,
    perturb: &PerturbConfig,
    correspondence: &CorrespondenceConfig,
) -> Vec<Result<TrainingExample>> {
    par::map_range(n, |i| {
        let seed = example_seed(base_seed, i as u64);
        synth_corrector_example(image, iuv, parse, seed, perturb, correspondence)
    })
}

impl TrainingExample {
    /// The forward affine map that produced the perturbed rasters.
    pub fn affine_transform(&self) -> Result<AffineTransform> {
        let (w, h) = self.target_image.dims();
        AffineTransform::from_params(&self.affine, w, h)
    }

    /// Backward flow undoing the affine map: warping the perturbed image
    /// through it recovers the target up to interpolation error.
    pub fn inverse_affine_flow(&self) -> Result<FlowField> {
        let (w, h) = self.target_image.dims();
        let inverse = self
            .affine_transform()?
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("affine map is singular".into()))?;
        inverse.to_flow(w, h)
    }

    /// What [`TrainingExample::read_dir`] returns after [`TrainingExample::write_dir`].
    pub fn quantized(&self) -> Result<TrainingExample> {
        let requant = |img: &ImageBuffer| ImageBuffer::decode_png(&img.encode_png()?);
        Ok(TrainingExample {
            perturbed_image: requant(&self.perturbed_image)?,
            perturbed_iuv: self.perturbed_iuv.quantize(),
            naive_flow: self.naive_flow.quantize(),
            target_image: requant(&self.target_image)?,
            target_iuv: self.target_iuv.quantize(),
            ..self.clone()
        })
    }

    fn params_text(&self) -> String {
        let a = &self.affine;
        let mut pairs = vec![
            ("seed".to_string(), self.seed.to_string()),
            ("affine.rotation".into(), a.rotation.to_string()),
            ("affine.translate_x".into(), a.translate_x.to_string()),
            ("affine.translate_y".into(), a.translate_y.to_string()),
            ("affine.scale".into(), a.scale.to_string()),
            ("affine.shear_x".into(), a.shear_x.to_string()),
            ("affine.shear_y".into(), a.shear_y.to_string()),
        ];
        pairs.extend(self.cosine.to_pairs());
        kv::render(pairs)
    }

    /// Writes the example as a directory of PNGs, a `.dwfl` flow and `params.txt`.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        self.perturbed_image.save(dir.join(PERTURBED_IMAGE))?;
        self.perturbed_iuv.save(dir.join(PERTURBED_IUV))?;
        self.perturbed_parse.save(dir.join(PERTURBED_PARSE))?;
        self.target_image.save(dir.join(TARGET_IMAGE))?;
        self.target_iuv.save(dir.join(TARGET_IUV))?;
        self.target_parse.save(dir.join(TARGET_PARSE))?;
        self.naive_flow.save(dir.join(NAIVE_FLOW))?;
        png::write_file(&dir.join(PARAMS), self.params_text().as_bytes())
    }

    pub fn read_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let text = String::from_utf8(png::read_file(&dir.join(PARAMS))?)
            .map_err(|_| Error::Format("params.txt is not UTF-8".into()))?;
        let pairs = kv::parse(&text)?;
        let f = |key: &str| kv::lookup_parse::<f64>(&pairs, key);
        let affine = AffineParams {
            rotation: f("affine.rotation")?,
            translate_x: f("affine.translate_x")?,
            translate_y: f("affine.translate_y")?,
            scale: f("affine.scale")?,
            shear_x: f("affine.shear_x")?,
            shear_y: f("affine.shear_y")?,
        };
        Ok(Self {
            seed: kv::lookup_parse(&pairs, "seed")?,
            perturbed_image: ImageBuffer::load(dir.join(PERTURBED_IMAGE))?,
            perturbed_iuv: IuvMap::load(dir.join(PERTURBED_IUV))?,
            perturbed_parse: ParseMap::load(dir.join(PERTURBED_PARSE))?,
            naive_flow: FlowField::load(dir.join(NAIVE_FLOW))?,
            target_image: ImageBuffer::load(dir.join(TARGET_IMAGE))?,
            target_iuv: IuvMap::load(dir.join(TARGET_IUV))?,
            target_parse: ParseMap::load(dir.join(TARGET_PARSE))?,
            cosine: CosinePerturbParams::from_pairs(&pairs)?,
            affine,
        })
    }
}
