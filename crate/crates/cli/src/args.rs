use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mvd_core::classify::{ModelKind, DEFAULT_SEED};
use mvd_core::pareto::DEFAULT_THETA;
use mvd_core::report::Axis;
use mvd_core::sweep::SweepPhase;
use mvd_core::{ClipLength, ResampleMode};

#[derive(Debug, Parser)]
#[command(
    name = "mvd",
    version,
    about = "Find the minimum viable sample rate, bit depth and clip length for an audio classifier"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded synthetic harmonic-tone corpus and its manifest.
    Synth(SynthArgs),
    /// Degrade one WAV file.
    Degrade(DegradeArgs),
    /// Extract clip-level MFCC features for every manifest entry.
    Features(FeaturesArgs),
    /// Cross-validate a classifier on a feature CSV; prints JSON.
    Classify(ClassifyArgs),
    /// Run a degradation sweep and write the results CSV.
    Sweep(SweepArgs),
    /// Analyze a results CSV; prints a JSON report.
    Analyze(AnalyzeArgs),
    /// Plan a fixed-budget sensor fleet; prints JSON.
    Plan(PlanArgs),
    /// Write CSV, JSON and SVG reports for a results CSV.
    Report(ReportArgs),
    /// Sweep, analyze and report in one run.
    Pipeline(PipelineArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output directory for WAV files and manifest.csv.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub classes: usize,
    #[arg(long, default_value_t = 40)]
    pub clips_per_class: usize,
    #[arg(long, default_value_t = 44_100)]
    pub rate: u32,
    /// Clip duration in seconds.
    #[arg(long, default_value_t = 2.0)]
    pub duration: f64,
    /// Highest fundamental frequency in Hz.
    #[arg(long, default_value_t = 1_500.0)]
    pub max_content_hz: f64,
    #[arg(long, default_value_t = 0x5EED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DegradeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Target sample rate; defaults to the source rate.
    #[arg(long)]
    pub rate: Option<u32>,
    /// Target bit depth; defaults to the source depth.
    #[arg(long)]
    pub bits: Option<u32>,
    /// Clip length in seconds, or `full`.
    #[arg(long = "len", visible_alias = "length", default_value = "full")]
    pub length: ClipLength,
    #[arg(long, default_value = "decimate")]
    pub mode: ResampleMode,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// JSON file with MFCC parameters; missing fields keep their defaults.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long, default_value = "svm")]
    pub model: ModelKind,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub folds: usize,
}

#[derive(Debug, Args)]
pub struct SweepOpts {
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub phase: SweepPhase,
    /// JSON file overriding grids, resample mode, MFCC or training settings.
    #[arg(long)]
    pub plan: Option<PathBuf>,
    /// Worker threads; defaults to the number of logical cores.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Directory for memoized features.
    #[arg(long, env = "MVD_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Classifier seed; overrides the plan file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Resample mode; overrides the plan file.
    #[arg(long)]
    pub mode: Option<ResampleMode>,
    /// Write zero wall times so repeated runs are byte-identical.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub sweep: SweepOpts,
    #[arg(long, default_value = "results.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub results: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THETA)]
    pub theta: f64,
    /// Axes to analyze; repeatable. Defaults to every axis the results vary along.
    #[arg(long)]
    pub axis: Vec<Axis>,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub budget: f64,
    #[arg(long, default_value_t = 1.0)]
    pub years: f64,
    /// JSON array of sensor catalog entries.
    #[arg(long)]
    pub catalog: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    pub min_acc: f64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub results: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THETA)]
    pub theta: f64,
    #[arg(long)]
    pub axis: Vec<Axis>,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub sweep: SweepOpts,
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THETA)]
    pub theta: f64,
}
