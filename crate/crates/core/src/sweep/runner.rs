use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::cost::cost_of;
use super::plan::SweepPlan;
use super::result::SweepResult;
use crate::audio::AudioClip;
use crate::classify::cross_validate;
use crate::degrade::{apply, ClipLength, DegradationConfig, ResampleMode};
use crate::error::{Error, Result};
use crate::features::{FeatureVector, MfccExtractor, MfccParams};
use crate::scalar::Real;

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Worker threads for grid points; `None` uses every logical core.
    pub workers: Option<usize>,
    /// Directory for memoized per-configuration features.
    pub cache_dir: Option<PathBuf>,
    /// Record `wall_time_s = 0` so output files are byte-reproducible.
    pub omit_timing: bool,
}

/// Degraded and featurized corpus for one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet<T = f64> {
    pub features: Vec<FeatureVector<T>>,
    pub excluded: usize,
    /// First per-clip failure, kept for error reporting.
    pub first_failure: Option<String>,
}

/// Degrades every clip to `cfg` and extracts clip-level features. Clips that
/// cannot be degraded (for example, ones recorded below the target rate)
/// are counted and skipped.
pub fn featurize_config<T: Real>(
    clips: &[AudioClip<T>],
    cfg: &DegradationConfig,
    mode: ResampleMode,
    params: &MfccParams,
) -> Result<FeatureSet<T>> {
    let mut extractor = MfccExtractor::new(params, cfg.sample_rate_hz)?;
    let mut out = FeatureSet {
        features: Vec::with_capacity(clips.len()),
        excluded: 0,
        first_failure: None,
    };
    for clip in clips {
        match apply(clip, cfg, mode) {
            Ok(degraded) => out.features.push(extractor.featurize(&degraded)),
            Err(e) => {
                out.excluded += 1;
                out.first_failure
                    .get_or_insert_with(|| format!("{}: {e}", clip.origin()));
            }
        }
    }
    Ok(out)
}

/// Mean clip duration, used as the length of `full` configurations.
pub fn nominal_duration<T: Real>(clips: &[AudioClip<T>]) -> f64 {
    clips.iter().map(AudioClip::duration_seconds).sum::<f64>() / clips.len().max(1) as f64
}

fn resolve(cfg: &DegradationConfig, full: f64) -> DegradationConfig {
    DegradationConfig {
        clip_length: ClipLength::Seconds(cfg.clip_length.resolve(full)),
        ..*cfg
    }
}

fn dataset_fingerprint<T: Real>(clips: &[AudioClip<T>]) -> String {
    let mut h = Sha256::new();
    for c in clips {
        h.update(c.label().as_bytes());
        h.update([0]);
        h.update(c.sample_rate_hz().to_le_bytes());
        h.update(c.source_bit_depth().to_le_bytes());
        h.update((c.len() as u64).to_le_bytes());
        for s in c.samples() {
            h.update(s.to_f64_lossy().to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

#[derive(Serialize, Deserialize)]
struct CachedFeatures {
    excluded: usize,
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

fn cache_path(
    dir: &Path,
    fingerprint: &str,
    cfg: &DegradationConfig,
    mode: ResampleMode,
    params: &MfccParams,
    scalar: &str,
) -> Result<PathBuf> {
    let key = serde_json::json!({
        "dataset": fingerprint,
        "config": cfg,
        "mode": mode,
        "mfcc": params,
        "scalar": scalar,
    });
    let digest = hex::encode(Sha256::digest(serde_json::to_vec(&key)?));
    Ok(dir.join(format!("{digest}.json")))
}

fn read_cache<T: Real>(path: &Path) -> Option<FeatureSet<T>> {
    let bytes = fs::read(path).ok()?;
    let cached: CachedFeatures = serde_json::from_slice(&bytes).ok()?;
    let features = cached
        .labels
        .into_iter()
        .zip(cached.values)
        .map(|(l, v)| FeatureVector::new(v.into_iter().map(T::of).collect(), l))
        .collect::<Result<Vec<_>>>()
        .ok()?;
    Some(FeatureSet {
        features,
        excluded: cached.excluded,
        first_failure: None,
    })
}

fn write_cache<T: Real>(path: &Path, set: &FeatureSet<T>) -> Result<()> {
    let cached = CachedFeatures {
        excluded: set.excluded,
        labels: set.features.iter().map(|f| f.label().to_string()).collect(),
        values: set
            .features
            .iter()
            .map(|f| f.values().iter().map(|v| v.to_f64_lossy()).collect())
            .collect(),
    };
    // write then rename so a reader never sees a half-written file
    let partial = path.with_extension("json.partial");
    fs::write(&partial, serde_json::to_vec(&cached)?).map_err(|e| Error::io(&partial, e))?;
    fs::rename(&partial, path).map_err(|e| Error::io(path, e))
}

fn run_point<T: Real>(
    clips: &[AudioClip<T>],
    plan: &SweepPlan,
    cfg: &DegradationConfig,
    baseline: &DegradationConfig,
    full: f64,
    cache: Option<(&Path, &str)>,
    options: &SweepOptions,
) -> Result<SweepResult> {
    let started = Instant::now();
    let failed = |cause: String| Error::ConfigFailed {
        config: cfg.to_string(),
        cause,
    };
    let cached_at = match cache {
        Some((dir, fp)) => Some(cache_path(
            dir,
            fp,
            cfg,
            plan.resample_mode,
            &plan.mfcc_params,
            std::any::type_name::<T>(),
        )?),
        None => None,
    };
    let set = match cached_at.as_deref().and_then(read_cache::<T>) {
        Some(set) => set,
        None => {
            let set = featurize_config(clips, cfg, plan.resample_mode, &plan.mfcc_params)
                .map_err(|e| failed(e.to_string()))?;
            if let Some(p) = &cached_at {
                if let Err(e) = write_cache(p, &set) {
                    log::warn!("feature cache write failed: {e}");
                }
            }
            set
        }
    };
    if set.features.is_empty() {
        return Err(failed(format!(
            "all {} clips failed; first error: {}",
            set.excluded,
            set.first_failure.unwrap_or_default()
        )));
    }
    if set.excluded > 0 {
        log::warn!("{cfg}: excluded {} of {} clips", set.excluded, clips.len());
    }
    let eval = cross_validate(&set.features, &plan.train_config).map_err(|e| failed(e.to_string()))?;
    let resolved = resolve(cfg, full);
    let cost = cost_of(&resolved, &resolve(baseline, full))?;
    let wall_time_s = if options.omit_timing {
        0.0
    } else {
        started.elapsed().as_secs_f64()
    };
    Ok(SweepResult {
        config: resolved,
        eval,
        cost,
        wall_time_s,
        excluded_clips: set.excluded,
    })
}

/// Runs every grid point of `plan` over `clips`.
///
/// Grid points execute on a bounded pool and are merged in grid order, then
/// stably sorted by descending bytes per clip, so the output is independent
/// of scheduling.
pub fn run_sweep<T: Real>(
    clips: &[AudioClip<T>],
    plan: &SweepPlan,
    options: &SweepOptions,
) -> Result<Vec<SweepResult>> {
    plan.validate()?;
    if clips.is_empty() {
        return Err(Error::InvalidDataset("no clips to sweep".into()));
    }
    let labels: BTreeSet<&str> = clips.iter().map(AudioClip::label).collect();
    if labels.len() < 2 {
        return Err(Error::InvalidDataset(format!(
            "need at least 2 labels, found {}",
            labels.len()
        )));
    }
    let full = nominal_duration(clips);
    let baseline = plan.baseline();
    let grid = plan.grid();
    let fingerprint;
    let cache = match &options.cache_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            fingerprint = dataset_fingerprint(clips);
            Some((dir.as_path(), fingerprint.as_str()))
        }
        None => None,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = options.workers {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let mut results = pool.install(|| {
        grid.par_iter()
            .map(|cfg| run_point(clips, plan, cfg, &baseline, full, cache, options))
            .collect::<Result<Vec<_>>>()
    })?;
    results.sort_by_key(|r| std::cmp::Reverse(r.cost.bytes_per_clip));
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audio::{generate_synthetic, SynthSpec};
    use crate::sweep::{SourceProfile, SweepPhase, Tradeoff};

    fn corpus(clips_per_class: usize) -> Vec<AudioClip<f64>> {
        generate_synthetic(&SynthSpec {
            num_classes: 4,
            clips_per_class,
            duration_s: 0.5,
            ..SynthSpec::default()
        })
        .unwrap()
    }

    fn plan(phase: SweepPhase) -> SweepPlan {
        SweepPlan::for_source(
            phase,
            SourceProfile {
                sample_rate_hz: 44_100,
                bit_depth: 16,
                duration_s: 0.5,
            },
        )
    }

    #[test]
    fn one_result_per_grid_point_sorted_by_cost() {
        let clips = corpus(10);
        let mut p = plan(SweepPhase::Combined);
        p.sample_rates_hz = vec![44_100, 8_000, 4_000];
        p.bit_depths = vec![16, 8];
        let results = run_sweep(&clips, &p, &SweepOptions::default()).unwrap();
        assert_eq!(results.len(), 6);
        assert!(results
            .windows(2)
            .all(|w| w[0].bytes_per_clip() >= w[1].bytes_per_clip()));
        assert_eq!(results[0].cost.relative_cost, 1.0);
        let unique: BTreeSet<(u32, u32)> = results
            .iter()
            .map(|r| (r.config.sample_rate_hz, r.config.bit_depth))
            .collect();
        assert_eq!(unique.len(), 6);
        assert!(results.iter().all(|r| r.config.clip_length == ClipLength::Seconds(0.5)));
    }

    #[test]
    fn single_point_matches_direct_cross_validation() {
        let clips = corpus(10);
        let mut p = plan(SweepPhase::SampleRate);
        p.sample_rates_hz = vec![8_000];
        let results = run_sweep(&clips, &p, &SweepOptions::default()).unwrap();
        assert_eq!(results.len(), 1);
        let cfg = DegradationConfig::new(8_000, 16, ClipLength::Full);
        let set = featurize_config(&clips, &cfg, p.resample_mode, &p.mfcc_params).unwrap();
        let direct = cross_validate(&set.features, &p.train_config).unwrap();
        assert_eq!(results[0].eval, direct);
    }

    #[test]
    fn full_fidelity_point_equals_undegraded_baseline() {
        let clips = corpus(10);
        let p = plan(SweepPhase::BitDepth);
        let results = run_sweep(&clips, &p, &SweepOptions::default()).unwrap();
        let mut extractor = MfccExtractor::new(&p.mfcc_params, 44_100).unwrap();
        let raw: Vec<_> = clips.iter().map(|c| extractor.featurize(c)).collect();
        let direct = cross_validate(&raw, &p.train_config).unwrap();
        assert_eq!(results[0].eval, direct);
    }

    #[test]
    fn worker_count_and_cache_do_not_change_results() {
        let clips = corpus(8);
        let mut p = plan(SweepPhase::SampleRate);
        p.sample_rates_hz = vec![44_100, 16_000, 4_000];
        let opts = |workers, cache_dir| SweepOptions {
            workers: Some(workers),
            cache_dir,
            omit_timing: true,
        };
        let a = run_sweep(&clips, &p, &opts(1, None)).unwrap();
        let b = run_sweep(&clips, &p, &opts(3, None)).unwrap();
        assert_eq!(a, b);
        let dir = tempfile::tempdir().unwrap();
        let cold = run_sweep(&clips, &p, &opts(2, Some(dir.path().to_path_buf()))).unwrap();
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
        let warm = run_sweep(&clips, &p, &opts(2, Some(dir.path().to_path_buf()))).unwrap();
        assert_eq!(a, cold);
        assert_eq!(a, warm);
    }

    #[test]
    fn clips_below_target_rate_are_excluded() {
        let mut clips = corpus(8);
        let low = generate_synthetic::<f64>(&SynthSpec {
            num_classes: 4,
            clips_per_class: 4,
            sample_rate_hz: 8_000,
            duration_s: 0.5,
            ..SynthSpec::default()
        })
        .unwrap();
        clips.extend(low);
        let mut p = plan(SweepPhase::SampleRate);
        p.sample_rates_hz = vec![16_000, 8_000];
        let results = run_sweep(&clips, &p, &SweepOptions::default()).unwrap();
        let at16 = results.iter().find(|r| r.config.sample_rate_hz == 16_000).unwrap();
        let at8 = results.iter().find(|r| r.config.sample_rate_hz == 8_000).unwrap();
        assert_eq!(at16.excluded_clips, 16);
        assert_eq!(at8.excluded_clips, 0);
    }

    #[test]
    fn all_clips_failing_is_config_failed() {
        let clips = corpus(8);
        let mut p = plan(SweepPhase::SampleRate);
        p.sample_rates_hz = vec![48_000];
        let err = run_sweep(&clips, &p, &SweepOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ConfigFailed { .. }), "{err}");
    }

    #[test]
    fn single_label_corpus_rejected() {
        let clips: Vec<_> = corpus(8).into_iter().filter(|c| c.label() == "class_0").collect();
        let err = run_sweep(&clips, &plan(SweepPhase::SampleRate), &SweepOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidDataset(_)));
    }
}
