use serde::{Deserialize, Serialize};

use crate::degrade::DegradationConfig;
use crate::error::{Error, Result};

/// Storage and bandwidth proxy for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    /// `ceil(rate * bits * seconds / 8)`.
    pub bytes_per_clip: u64,
    /// `rate * bits / 8`.
    pub bytes_per_second_stream: f64,
    /// Data volume relative to the baseline configuration.
    pub relative_cost: f64,
}

fn seconds_of(cfg: &DegradationConfig) -> Result<f64> {
    cfg.clip_length
        .seconds()
        .ok_or_else(|| Error::InvalidInput(format!("{cfg}: resolve `full` to a duration before costing")))
}

/// Bit volume `rate * bits * seconds`: multiplying by a power of two stays
/// exact, so halving the depth halves this value bit-for-bit.
fn bit_volume(cfg: &DegradationConfig, seconds: f64) -> f64 {
    (f64::from(cfg.sample_rate_hz) * f64::from(cfg.bit_depth)) * seconds
}

pub fn bytes_per_clip(cfg: &DegradationConfig, seconds: f64) -> u64 {
    let bytes = bit_volume(cfg, seconds) / 8.0;
    let nearest = bytes.round();
    // products such as 48000 * 16 * 0.7 land a few ulps above an integer
    if (bytes - nearest).abs() <= 1e-12 * nearest.max(1.0) {
        nearest as u64
    } else {
        bytes.ceil() as u64
    }
}

/// Cost of `cfg` against `baseline`. Both must carry explicit lengths, and
/// `cfg` may not exceed the baseline on any axis.
pub fn cost_of(cfg: &DegradationConfig, baseline: &DegradationConfig) -> Result<CostBreakdown> {
    let secs = seconds_of(cfg)?;
    let base_secs = seconds_of(baseline)?;
    if cfg.sample_rate_hz > baseline.sample_rate_hz {
        return Err(Error::InvalidBaseline(format!(
            "sample rate {} > {}",
            cfg.sample_rate_hz, baseline.sample_rate_hz
        )));
    }
    if cfg.bit_depth > baseline.bit_depth {
        return Err(Error::InvalidBaseline(format!(
            "bit depth {} > {}",
            cfg.bit_depth, baseline.bit_depth
        )));
    }
    if secs > base_secs {
        return Err(Error::InvalidBaseline(format!("clip length {secs} > {base_secs}")));
    }
    if !(secs > 0.0) || cfg.sample_rate_hz == 0 || cfg.bit_depth == 0 {
        return Err(Error::InvalidInput(format!("{cfg} has a non-positive axis")));
    }
    Ok(CostBreakdown {
        bytes_per_clip: bytes_per_clip(cfg, secs),
        bytes_per_second_stream: f64::from(cfg.sample_rate_hz) * f64::from(cfg.bit_depth) / 8.0,
        relative_cost: bit_volume(cfg, secs) / bit_volume(baseline, base_secs),
    })
}
