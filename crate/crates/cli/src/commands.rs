use std::path::Path;

use streetwarp::composite::{
    composite_tryon, export_inpaint_job, preserve_face, Condition, InpaintPrompt,
};
use streetwarp::correspondence::naive_flow_masked;
use streetwarp::curation::{
    self, apply_crop, build_manifest, make_test_tuples, parse_records, render_tuples, Category,
    Decision,
};
use streetwarp::metrics::{
    corrector_objective, l1_recon, perceptual_loss, ssim, tv_loss, PyramidExtractor,
};
use streetwarp::perturb::{synth_batch, TrainingExample};
use streetwarp::raster::{BinaryMask, FlowField, ImageBuffer, IuvMap, ParseMap};
use streetwarp::warp::{warp_bilinear, WarpNearest};

use crate::config::FileConfig;
use crate::{
    CategoryArg, Command, CompositeArgs, CurateArgs, EvalArgs, ExportInpaintArgs, Failure,
    FlowArgs, Kind, ObjectiveArgs, Preset, SynthArgs, TuplesArgs, WarpArgs,
};

pub fn dispatch(command: Command, config: &FileConfig) -> Result<(), Failure> {
    match command {
        Command::Flow(a) => flow(a, config),
        Command::Warp(a) => warp(a),
        Command::Synth(a) => synth(a, config),
        Command::Composite(a) => composite(a, config),
        Command::Curate(a) => curate(a),
        Command::Tuples(a) => tuples(a),
        Command::Eval(a) => eval(a),
        Command::Objective(a) => objective(a, config),
        Command::ExportInpaint(a) => export_inpaint(a),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn create_dir(path: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(path)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", path.display())))
}

fn flow(a: FlowArgs, config: &FileConfig) -> Result<(), Failure> {
    let mut corr = config.correspondence;
    if let Some(e) = a.epsilon {
        corr.epsilon = e;
    }
    if let Some(t) = a.tau {
        corr.tau = t;
    }
    if a.no_fill {
        corr.fill_holes = false;
    }
    let garment = IuvMap::load(&a.garment_iuv)?;
    let person = IuvMap::load(&a.person_iuv)?;
    let region = a
        .garment_mask
        .as_deref()
        .map(BinaryMask::load)
        .transpose()?;
    let result = naive_flow_masked(&garment, region.as_ref(), &person, &corr)?;
    if result.stats.empty_index {
        return Err(Failure::input(
            "garment has no foreground pixels to match against",
        ));
    }
    result.flow.save(&a.out)?;
    let s = result.stats;
    println!(
        "indexed={}\nmatched={}\nfilled={}",
        s.indexed, s.matched, s.filled
    );
    Ok(())
}

fn warp(a: WarpArgs) -> Result<(), Failure> {
    let flow = FlowField::load(&a.flow)?;
    match a.kind {
        Kind::Image => {
            let (out, _) = warp_bilinear(&ImageBuffer::load(&a.src)?, &flow)?;
            out.save(&a.out)?;
        }
        Kind::Iuv => IuvMap::load(&a.src)?.warp_nearest(&flow)?.save(&a.out)?,
        Kind::Parse => ParseMap::load(&a.src)?.warp_nearest(&flow)?.save(&a.out)?,
    }
    if let Some(path) = &a.mask_out {
        flow.valid_mask().save(path)?;
    }
    Ok(())
}

pub fn example_dir_name(index: usize) -> String {
    format!("example_{index:05}")
}

fn synth(a: SynthArgs, config: &FileConfig) -> Result<(), Failure> {
    let image = ImageBuffer::load(&a.image)?;
    let iuv = IuvMap::load(&a.iuv)?;
    let parse = ParseMap::load(&a.parse)?;
    create_dir(&a.out_dir)?;
    let examples = synth_batch(
        &image,
        &iuv,
        &parse,
        a.seed,
        a.count,
        &config.perturb,
        &config.correspondence,
    );
    for (i, ex) in examples.into_iter().enumerate() {
        ex?.write_dir(a.out_dir.join(example_dir_name(i)))?;
    }
    println!("written={}", a.count);
    Ok(())
}

fn composite(a: CompositeArgs, config: &FileConfig) -> Result<(), Failure> {
    let radius = a.radius.unwrap_or(config.composite.radius);
    let undressed = ImageBuffer::load(&a.undressed)?;
    let warped = ImageBuffer::load(&a.warped)?;
    let mask = BinaryMask::load(&a.mask)?;
    let result = composite_tryon(&undressed, &warped, &mask, radius)?;
    let mut image = result.composite;
    if let (Some(original), Some(parse)) = (&a.original, &a.parse) {
        image = preserve_face(
            &image,
            &ImageBuffer::load(original)?,
            &ParseMap::load(parse)?,
        )?;
    }
    image.save(&a.out)?;
    if let Some(path) = &a.refine_mask_out {
        result.refine_mask.save(path)?;
    }
    println!(
        "garment_pixels={}\nrefine_pixels={}",
        result.garment_coverage.count(),
        result.refine_mask.count()
    );
    Ok(())
}

fn curate(a: CurateArgs) -> Result<(), Failure> {
    let records = parse_records(&read_text(&a.records)?)?;
    let decisions = curation::curate(&records);
    write_text(&a.out, &build_manifest(&records, &decisions)?)?;
    if let (Some(images), Some(crops_out)) = (&a.images, &a.crops_out) {
        create_dir(crops_out)?;
        let jobs: Vec<_> = records
            .iter()
            .zip(&decisions)
            .filter_map(|(r, d)| match d {
                Decision::Keep(spec) => Some((r.id.as_str(), *spec)),
                Decision::Reject(_) => None,
            })
            .collect();
        try_for_each(&jobs, |&(id, spec)| {
            let image = ImageBuffer::load(images.join(format!("{id}.png")))?;
            apply_crop(&image, &spec)?.save(crops_out.join(format!("{id}.png")))?;
            Ok(())
        })?;
    }
    let kept = decisions.iter().filter(|d| d.is_keep()).count();
    println!("kept={kept}\nrejected={}", decisions.len() - kept);
    Ok(())
}

#[cfg(feature = "parallel")]
fn try_for_each<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<(), Failure> + Sync + Send,
) -> Result<(), Failure> {
    use rayon::prelude::*;
    items.par_iter().try_for_each(f)
}

#[cfg(not(feature = "parallel"))]
fn try_for_each<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<(), Failure> + Sync + Send,
) -> Result<(), Failure> {
    items.iter().try_for_each(f)
}

fn tuples(a: TuplesArgs) -> Result<(), Failure> {
    let ids: Vec<String> = read_text(&a.ids)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect();
    let category = match a.category {
        CategoryArg::Top => Category::Top,
        CategoryArg::Dress => Category::Dress,
    };
    let tuples = make_test_tuples(&ids, category, a.seed)?;
    write_text(&a.out, &render_tuples(&tuples))?;
    println!("tuples={}", tuples.len());
    Ok(())
}

fn eval(a: EvalArgs) -> Result<(), Failure> {
    let x = ImageBuffer::load(&a.a)?;
    let y = ImageBuffer::load(&a.b)?;
    let region = a.region.as_deref().map(BinaryMask::load).transpose()?;
    if let Some(path) = &a.flow {
        println!("tv={}", tv_loss(&FlowField::load(path)?).value);
    }
    println!("l1={}", l1_recon(&x, &y, region.as_ref())?);
    println!(
        "perceptual={}",
        perceptual_loss(&x, &y, &PyramidExtractor::default())?
    );
    println!("ssim={}", ssim(&x, &y)?);
    Ok(())
}

fn objective(a: ObjectiveArgs, config: &FileConfig) -> Result<(), Failure> {
    let example = TrainingExample::read_dir(&a.example)?;
    let flow = match &a.flow {
        Some(path) => FlowField::load(path)?,
        None => example.naive_flow.clone(),
    };
    let report = corrector_objective(
        &example,
        &flow,
        &PyramidExtractor::default(),
        &config.weights,
    )?;
    print!("{}", report.to_kv());
    Ok(())
}

fn export_inpaint(a: ExportInpaintArgs) -> Result<(), Failure> {
    let image = ImageBuffer::load(&a.image)?;
    let mask = BinaryMask::load(&a.mask)?;
    let mut prompt = match a.preset {
        Preset::Skin => InpaintPrompt::skin(),
        Preset::Refine => InpaintPrompt::refine(),
    };
    if let Some(p) = a.prompt {
        prompt.prompt = p;
    }
    if let Some(p) = a.negative_prompt {
        prompt.negative_prompt = p;
    }
    let bundle = match (&a.iuv, &a.parse) {
        (Some(path), _) => export_inpaint_job(
            &image,
            &mask,
            Condition::Iuv(&IuvMap::load(path)?),
            &prompt,
            &a.out_dir,
        )?,
        (None, Some(path)) => export_inpaint_job(
            &image,
            &mask,
            Condition::Parse(&ParseMap::load(path)?),
            &prompt,
            &a.out_dir,
        )?,
        (None, None) => return Err(Failure::input("one of --iuv or --parse is required")),
    };
    println!("noop={}", bundle.noop);
    Ok(())
}
