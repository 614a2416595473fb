use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::TrainConfig;
use crate::degrade::{ClipLength, DegradationConfig, ResampleMode};
use crate::error::{Error, Result};
use crate::features::MfccParams;

pub const DEFAULT_SAMPLE_RATES_HZ: [u32; 5] = [44_100, 22_050, 16_000, 8_000, 4_000];
pub const DEFAULT_BIT_DEPTHS: [u32; 5] = [16, 12, 10, 8, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepPhase {
    #[serde(alias = "rate")]
    SampleRate,
    #[serde(alias = "depth")]
    BitDepth,
    Combined,
    #[serde(alias = "length")]
    ClipLength,
}

impl SweepPhase {
    pub fn varies_rate(self) -> bool {
        matches!(self, SweepPhase::SampleRate | SweepPhase::Combined)
    }

    pub fn varies_depth(self) -> bool {
        matches!(self, SweepPhase::BitDepth | SweepPhase::Combined)
    }

    pub fn varies_length(self) -> bool {
        self == SweepPhase::ClipLength
    }
}

impl std::str::FromStr for SweepPhase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rate" | "sample_rate" => Ok(SweepPhase::SampleRate),
            "depth" | "bit_depth" => Ok(SweepPhase::BitDepth),
            "combined" => Ok(SweepPhase::Combined),
            "length" | "clip_length" => Ok(SweepPhase::ClipLength),
            _ => Err(format!(
                "unknown phase {s:?} (expected rate, depth, combined or length)"
            )),
        }
    }
}

impl fmt::Display for SweepPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepPhase::SampleRate => "rate",
            SweepPhase::BitDepth => "depth",
            SweepPhase::Combined => "combined",
            SweepPhase::ClipLength => "length",
        })
    }
}

/// Default clip-length grid for sources of `duration_s` seconds, longest first.
///
/// Short sources (up to 5 s) step down to 1 s in 0.5 s increments; longer
/// ones step by 10 s down to 10 s, then 5 s, then 1 s steps to 1 s.
pub fn default_clip_lengths(duration_s: f64) -> Vec<f64> {
    let mut out = vec![duration_s];
    if duration_s <= 5.0 {
        let mut half_steps = ((duration_s * 2.0) - 1e-9).floor() as i64;
        while half_steps >= 2 {
            out.push(half_steps as f64 / 2.0);
            half_steps -= 1;
        }
    } else {
        let mut tens = ((duration_s - 1e-9) / 10.0).floor() as i64 * 10;
        while tens >= 10 {
            out.push(tens as f64);
            tens -= 10;
        }
        out.extend([5.0, 4.0, 3.0, 2.0, 1.0].into_iter().filter(|&s| s < duration_s));
    }
    out
}

/// Characteristics of the undegraded corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceProfile {
    pub sample_rate_hz: u32,
    pub bit_depth: u32,
    pub duration_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub phase: SweepPhase,
    pub sample_rates_hz: Vec<u32>,
    pub bit_depths: Vec<u32>,
    pub clip_lengths_s: Vec<ClipLength>,
    #[serde(default)]
    pub resample_mode: ResampleMode,
    #[serde(default)]
    pub mfcc_params: MfccParams,
    #[serde(default)]
    pub train_config: TrainConfig,
}

fn length_key(l: &ClipLength) -> f64 {
    l.seconds().unwrap_or(f64::INFINITY)
}

impl SweepPlan {
    /// Default grids for `phase`, clipped to what the source can supply.
    /// The source's own rate and depth head their grids when absent; fixed
    /// axes hold the source value (and `full` length).
    pub fn for_source(phase: SweepPhase, source: SourceProfile) -> Self {
        let below = |grid: &[u32], top: u32| -> Vec<u32> {
            let mut v = vec![top];
            v.extend(grid.iter().copied().filter(|&g| g < top));
            v
        };
        let sample_rates_hz = if phase.varies_rate() {
            below(&DEFAULT_SAMPLE_RATES_HZ, source.sample_rate_hz)
        } else {
            vec![source.sample_rate_hz]
        };
        let bit_depths = if phase.varies_depth() {
            below(&DEFAULT_BIT_DEPTHS, source.bit_depth)
        } else {
            vec![source.bit_depth]
        };
        let clip_lengths_s = if phase.varies_length() {
            let mut grid = vec![ClipLength::Full];
            grid.extend(
                default_clip_lengths(source.duration_s)
                    .into_iter()
                    .skip(1)
                    .map(ClipLength::Seconds),
            );
            grid
        } else {
            vec![ClipLength::Full]
        };
        Self {
            phase,
            sample_rates_hz,
            bit_depths,
            clip_lengths_s,
            resample_mode: ResampleMode::default(),
            mfcc_params: MfccParams::default(),
            train_config: TrainConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, len: usize, varies: bool| -> Result<()> {
            if len == 0 {
                return Err(Error::InvalidPlan(format!("{name} grid is empty")));
            }
            if !varies && len != 1 {
                return Err(Error::InvalidPlan(format!(
                    "phase {} holds {name} fixed but {len} values were given",
                    self.phase
                )));
            }
            Ok(())
        };
        check("sample rate", self.sample_rates_hz.len(), self.phase.varies_rate())?;
        check("bit depth", self.bit_depths.len(), self.phase.varies_depth())?;
        check("clip length", self.clip_lengths_s.len(), self.phase.varies_length())?;
        if !self.sample_rates_hz.windows(2).all(|w| w[0] > w[1]) || self.sample_rates_hz.contains(&0) {
            return Err(Error::InvalidPlan(
                "sample rates must be positive and strictly descending".into(),
            ));
        }
        if !self.bit_depths.windows(2).all(|w| w[0] > w[1]) || self.bit_depths.iter().any(|&b| b == 0 || b > 32) {
            return Err(Error::InvalidPlan(
                "bit depths must lie in 1..=32, strictly descending".into(),
            ));
        }
        if !self
            .clip_lengths_s
            .windows(2)
            .all(|w| length_key(&w[0]) > length_key(&w[1]))
            || self.clip_lengths_s.iter().any(|l| !(length_key(l) > 0.0))
        {
            return Err(Error::InvalidPlan(
                "clip lengths must be positive and strictly descending".into(),
            ));
        }
        self.train_config.validate()
    }

    /// Grid points in sweep order: rate, then depth, then length.
    pub fn grid(&self) -> Vec<DegradationConfig> {
        let mut out = Vec::with_capacity(self.grid_size());
        for &r in &self.sample_rates_hz {
            for &b in &self.bit_depths {
                for &l in &self.clip_lengths_s {
                    out.push(DegradationConfig::new(r, b, l));
                }
            }
        }
        out
    }

    pub fn grid_size(&self) -> usize {
        self.sample_rates_hz.len() * self.bit_depths.len() * self.clip_lengths_s.len()
    }

    /// Highest-fidelity point: the head of every grid.
    pub fn baseline(&self) -> DegradationConfig {
        DegradationConfig::new(self.sample_rates_hz[0], self.bit_depths[0], self.clip_lengths_s[0])
    }
}

/// Partial plan read from JSON; absent fields keep their defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlanOverrides {
    pub sample_rates_hz: Option<Vec<u32>>,
    pub bit_depths: Option<Vec<u32>>,
    pub clip_lengths_s: Option<Vec<ClipLength>>,
    pub resample_mode: Option<ResampleMode>,
    pub mfcc_params: Option<MfccParams>,
    pub train_config: Option<TrainConfig>,
}

impl PlanOverrides {
    pub fn apply_to(self, mut plan: SweepPlan) -> SweepPlan {
        if let Some(v) = self.sample_rates_hz {
            plan.sample_rates_hz = v;
        }
        if let Some(v) = self.bit_depths {
            plan.bit_depths = v;
        }
        if let Some(v) = self.clip_lengths_s {
            plan.clip_lengths_s = v;
        }
        if let Some(v) = self.resample_mode {
            plan.resample_mode = v;
        }
        if let Some(v) = self.mfcc_params {
            plan.mfcc_params = v;
        }
        if let Some(v) = self.train_config {
            plan.train_config = v;
        }
        plan
    }
}
