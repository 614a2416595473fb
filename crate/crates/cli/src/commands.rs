use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;

use mvd_core::audio::{
    generate_synthetic, load_clips, load_manifest, read_wav, write_manifest, write_wav, ManifestEntry, SynthSpec,
    WRITABLE_DEPTHS,
};
use mvd_core::classify::{cross_validate, TrainConfig};
use mvd_core::degrade::apply;
use mvd_core::features::{read_features_csv, write_features_csv, MfccExtractor, MfccParams};
use mvd_core::pareto::{plan_fleet, SensorCatalogEntry};
use mvd_core::report::{analyze, emit_report, AnalysisReport, Axis};
use mvd_core::sweep::{
    load_results_csv, nominal_duration, run_sweep, save_results_csv, PlanOverrides, ResultRow, SourceProfile,
    SweepOptions, SweepPlan,
};
use mvd_core::{Clip, DegradationConfig, Error, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::args::*;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

/// Smallest WAV container depth that holds `bits` without loss.
fn container_depth(bits: u32) -> u32 {
    WRITABLE_DEPTHS.iter().copied().find(|&d| d >= bits).unwrap_or(32)
}

pub fn synth(a: &SynthArgs) -> Result<()> {
    let spec = SynthSpec {
        num_classes: a.classes,
        clips_per_class: a.clips_per_class,
        sample_rate_hz: a.rate,
        duration_s: a.duration,
        seed: a.seed,
        max_content_hz: a.max_content_hz,
    };
    let clips: Vec<Clip> = generate_synthetic(&spec)?;
    fs::create_dir_all(&a.out).map_err(|e| Error::io(&a.out, e))?;
    let mut entries = Vec::with_capacity(clips.len());
    let mut counters: BTreeMap<String, usize> = BTreeMap::new();
    for clip in &clips {
        let n = counters.entry(clip.label().to_string()).or_default();
        let name = format!("{}_{:03}.wav", clip.label(), *n);
        *n += 1;
        write_wav(clip, 16, a.out.join(&name))?;
        entries.push(ManifestEntry {
            path: name.into(),
            label: clip.label().to_string(),
        });
    }
    write_manifest(a.out.join("manifest.csv"), &entries)?;
    log::info!("wrote {} clips to {}", clips.len(), a.out.display());
    Ok(())
}

pub fn degrade(a: &DegradeArgs) -> Result<()> {
    let clip: Clip = read_wav(&a.input)?;
    let cfg = DegradationConfig::new(
        a.rate.unwrap_or(clip.sample_rate_hz()),
        a.bits.unwrap_or(clip.source_bit_depth()),
        a.length,
    );
    let out = apply(&clip, &cfg, a.mode)?;
    write_wav(&out, container_depth(cfg.bit_depth), &a.out)
}

fn load_dataset(manifest: &Path) -> Result<Vec<Clip>> {
    let manifest = load_manifest(manifest)?;
    let loaded = load_clips::<f64>(&manifest);
    if !loaded.failures.is_empty() {
        log::warn!(
            "{} of {} manifest entries could not be read",
            loaded.failures.len(),
            manifest.entries.len()
        );
    }
    if loaded.clips.is_empty() {
        return Err(Error::InvalidDataset("no manifest entry could be read".into()));
    }
    Ok(loaded.clips)
}

pub fn features(a: &FeaturesArgs) -> Result<()> {
    let params: MfccParams = match &a.params {
        Some(p) => read_json(p)?,
        None => MfccParams::default(),
    };
    let clips = load_dataset(&a.manifest)?;
    let mut extractors: HashMap<u32, MfccExtractor<f64>> = HashMap::new();
    let mut out = Vec::with_capacity(clips.len());
    for clip in &clips {
        let rate = clip.sample_rate_hz();
        let ex = match extractors.entry(rate) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(MfccExtractor::new(&params, rate)?),
        };
        out.push(ex.featurize(clip));
    }
    write_features_csv(&a.out, &out)
}

pub fn classify(a: &ClassifyArgs) -> Result<()> {
    let features = read_features_csv::<f64>(&a.features)?;
    let cfg = TrainConfig {
        model: a.model,
        seed: a.seed,
        folds: a.folds,
        ..TrainConfig::default()
    };
    print_json(&cross_validate(&features, &cfg)?)
}

/// Most common value, preferring the larger on ties.
fn mode_of(values: impl Iterator<Item = u32>) -> u32 {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(v, _)| v)
        .unwrap_or(0)
}

fn run(opts: &SweepOpts) -> Result<Vec<ResultRow>> {
    let clips = load_dataset(&opts.manifest)?;
    let source = SourceProfile {
        sample_rate_hz: mode_of(clips.iter().map(|c| c.sample_rate_hz())),
        bit_depth: mode_of(clips.iter().map(|c| c.source_bit_depth())),
        duration_s: nominal_duration(&clips),
    };
    let mut plan = SweepPlan::for_source(opts.phase, source);
    if let Some(p) = &opts.plan {
        plan = read_json::<PlanOverrides>(p)?.apply_to(plan);
    }
    if let Some(seed) = opts.seed {
        plan.train_config.seed = seed;
    }
    if let Some(mode) = opts.mode {
        plan.resample_mode = mode;
    }
    let options = SweepOptions {
        workers: opts.workers,
        cache_dir: opts.cache_dir.clone(),
        omit_timing: opts.omit_timing,
    };
    log::info!(
        "sweeping {} configurations over {} clips",
        plan.grid_size(),
        clips.len()
    );
    let results = run_sweep(&clips, &plan, &options)?;
    Ok(results.iter().map(ResultRow::from).collect())
}

pub fn sweep(a: &SweepArgs) -> Result<()> {
    let rows = run(&a.sweep)?;
    save_results_csv(&a.out, &rows)
}

fn axes_arg(axes: &[Axis]) -> Option<&[Axis]> {
    (!axes.is_empty()).then_some(axes)
}

pub fn analyze_cmd(a: &AnalyzeArgs) -> Result<()> {
    let rows = load_results_csv(&a.results)?;
    let report: AnalysisReport = analyze(&rows, a.theta, axes_arg(&a.axis))?;
    print_json(&report)
}

pub fn plan(a: &PlanArgs) -> Result<()> {
    let catalog: Vec<SensorCatalogEntry> = read_json(&a.catalog)?;
    print_json(&plan_fleet(a.budget, a.years, &catalog, a.min_acc)?)
}

fn write_report(rows: &[ResultRow], theta: f64, axes: &[Axis], out_dir: &Path) -> Result<()> {
    let report = analyze(rows, theta, axes_arg(axes))?;
    let files = emit_report(rows, &report, out_dir)?;
    log::info!(
        "wrote {}, {} and {} charts",
        files.results_csv.display(),
        files.analysis_json.display(),
        files.charts.len() + usize::from(files.heat_grid.is_some())
    );
    Ok(())
}

pub fn report(a: &ReportArgs) -> Result<()> {
    let rows = load_results_csv(&a.results)?;
    write_report(&rows, a.theta, &a.axis, &a.out_dir)
}

pub fn pipeline(a: &PipelineArgs) -> Result<()> {
    let rows = run(&a.sweep)?;
    write_report(&rows, a.theta, &[], &a.out_dir)
}
