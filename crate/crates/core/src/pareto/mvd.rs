use serde::{Deserialize, Serialize};

use crate::degrade::DegradationConfig;
use crate::error::{Error, Result};
use crate::sweep::Tradeoff;

/// Default retention threshold.
pub const DEFAULT_THETA: f64 = 0.95;

/// The cheapest configuration whose accuracy stays within a fraction of the
/// best observed accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MvdSelection {
    pub config: DegradationConfig,
    pub accuracy: f64,
    pub max_accuracy: f64,
    pub theta: f64,
    /// `theta * max_accuracy`.
    pub threshold_accuracy: f64,
    /// `accuracy / max_accuracy`; 1 when every accuracy is zero.
    pub retention: f64,
    pub bytes_per_clip: u64,
    pub relative_cost: f64,
    /// `1 - relative_cost`.
    pub savings: f64,
}

/// Among results with `accuracy >= theta * max_accuracy`, picks the one with
/// the fewest bytes per clip; ties go to the lower sample rate, then the
/// lower bit depth, then the shorter clip.
pub fn select_mvd<R: Tradeoff>(results: &[R], theta: f64) -> Result<MvdSelection> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::InvalidInput(format!("theta must be in (0, 1], got {theta}")));
    }
    if results.is_empty() {
        return Err(Error::InvalidInput("no results to select from".into()));
    }
    if let Some(r) = results.iter().find(|r| !r.accuracy().is_finite()) {
        return Err(Error::InvalidInput(format!("{}: non-finite accuracy", r.config())));
    }
    let max_accuracy = results.iter().map(Tradeoff::accuracy).fold(f64::NEG_INFINITY, f64::max);
    let threshold_accuracy = theta * max_accuracy;
    let chosen = results
        .iter()
        .filter(|r| r.accuracy() >= threshold_accuracy)
        .min_by(|a, b| {
            let (ca, cb) = (a.config(), b.config());
            a.bytes_per_clip()
                .cmp(&b.bytes_per_clip())
                .then(ca.sample_rate_hz.cmp(&cb.sample_rate_hz))
                .then(ca.bit_depth.cmp(&cb.bit_depth))
                .then(a.clip_length_s().total_cmp(&b.clip_length_s()))
        })
        .expect("the most accurate result always qualifies");
    let retention = if max_accuracy > 0.0 {
        chosen.accuracy() / max_accuracy
    } else {
        1.0
    };
    Ok(MvdSelection {
        config: *chosen.config(),
        accuracy: chosen.accuracy(),
        max_accuracy,
        theta,
        threshold_accuracy,
        retention,
        bytes_per_clip: chosen.bytes_per_clip(),
        relative_cost: chosen.relative_cost(),
        savings: 1.0 - chosen.relative_cost(),
    })
}
