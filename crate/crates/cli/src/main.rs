mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

const LONG_VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "\nflow file: DWFL v1 (v2 when source and target extents differ)",
    "\niuv png: 8-bit RGB, R=part 0..24, G=round(255u), B=round(255v)",
    "\nparse png: 8-bit gray, labels 0..7",
    "\nexample bundle: 1",
    "\ninpaint job: 1",
    "\nmanifest: 1",
);

#[derive(Debug, Parser)]
#[command(
    name = "streetwarp",
    version,
    long_version = LONG_VERSION,
    about = "Dense-correspondence garment warping toolkit",
    disable_help_flag = true,
    disable_version_flag = true,
    disable_help_subcommand = true
)]
struct Cli {
    /// Print help.
    #[arg(long, global = true, action = ArgAction::Help)]
    help: Option<bool>,

    /// Print the version and file format versions.
    #[arg(long, action = ArgAction::Version)]
    version: Option<bool>,

    /// TOML file with [correspondence], [perturb], [composite] and [weights] tables.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the naive garment-to-person flow from two IUV maps.
    Flow(FlowArgs),
    /// Backward-warp an image, IUV map or parse map through a flow.
    Warp(WarpArgs),
    /// Synthesise perturbed training examples from one annotated person image.
    Synth(SynthArgs),
    /// Composite a warped garment onto an undressed person.
    Composite(CompositeArgs),
    /// Filter annotation records and write a crop manifest.
    Curate(CurateArgs),
    /// Pair person and garment ids into unpaired test tuples.
    Tuples(TuplesArgs),
    /// Compare two images: L1, perceptual distance and SSIM.
    Eval(EvalArgs),
    /// Score a flow against a training example.
    Objective(ObjectiveArgs),
    /// Write an inpainting job bundle.
    ExportInpaint(ExportInpaintArgs),
}

#[derive(Debug, Args)]
struct FlowArgs {
    #[arg(long)]
    garment_iuv: PathBuf,
    #[arg(long)]
    person_iuv: PathBuf,
    /// Restrict garment pixels to this mask.
    #[arg(long)]
    garment_mask: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Leave unmatched person pixels invalid.
    #[arg(long)]
    no_fill: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Image,
    Iuv,
    Parse,
}

#[derive(Debug, Args)]
struct WarpArgs {
    #[arg(long)]
    src: PathBuf,
    #[arg(long)]
    flow: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Also write the flow's validity mask.
    #[arg(long)]
    mask_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "image")]
    kind: Kind,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    image: PathBuf,
    #[arg(long)]
    iuv: PathBuf,
    #[arg(long)]
    parse: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    count: usize,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct CompositeArgs {
    #[arg(long)]
    undressed: PathBuf,
    #[arg(long)]
    warped: PathBuf,
    #[arg(long)]
    mask: PathBuf,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    refine_mask_out: Option<PathBuf>,
    /// Paste face pixels from this image, located with --parse.
    #[arg(long, requires = "parse")]
    original: Option<PathBuf>,
    #[arg(long, requires = "original")]
    parse: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CurateArgs {
    #[arg(long)]
    records: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Directory of `<id>.png` source images; kept records are cropped from it.
    #[arg(long, requires = "crops_out")]
    images: Option<PathBuf>,
    #[arg(long, requires = "images")]
    crops_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CategoryArg {
    Top,
    Dress,
}

#[derive(Debug, Args)]
struct TuplesArgs {
    /// One id per line.
    #[arg(long)]
    ids: PathBuf,
    #[arg(long, value_enum)]
    category: CategoryArg,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Restrict L1 to this mask.
    #[arg(long)]
    region: Option<PathBuf>,
    /// Also report the smoothness of this flow.
    #[arg(long)]
    flow: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ObjectiveArgs {
    /// Example directory written by `synth`.
    #[arg(long)]
    example: PathBuf,
    /// Flow to score (default: the example's naive flow).
    #[arg(long)]
    flow: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    Skin,
    Refine,
}

#[derive(Debug, Args)]
struct ExportInpaintArgs {
    #[arg(long)]
    image: PathBuf,
    #[arg(long)]
    mask: PathBuf,
    #[arg(long, conflicts_with = "parse", required_unless_present = "parse")]
    iuv: Option<PathBuf>,
    #[arg(long)]
    parse: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Preset,
    /// Override the preset prompt.
    #[arg(long)]
    prompt: Option<String>,
    #[arg(long)]
    negative_prompt: Option<String>,
    #[arg(long)]
    out_dir: PathBuf,
}

/// An error with its exit code: 2 for bad input, 1 for everything else.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<streetwarp::Error> for Failure {
    fn from(e: streetwarp::Error) -> Self {
        match e {
            streetwarp::Error::Image(_) => Failure::internal(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = config::FileConfig::load(cli.config.as_deref())?;
    let work = move || commands::dispatch(cli.command, &config);
    match cli.jobs {
        Some(0) => Err(Failure::input("--jobs must be at least 1")),
        #[cfg(feature = "parallel")]
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::internal(format!("cannot start worker pool: {e}")))?
            .install(work),
        #[cfg(not(feature = "parallel"))]
        Some(_) => work(),
        None => work(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(1),
    }
}
