use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How per-frame coefficients are pooled into one clip-level vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// Per-coefficient mean followed by per-coefficient population std.
    #[default]
    MeanStd,
    MeanOnly,
}

impl Aggregation {
    pub fn dimension(self, num_coefficients: usize) -> usize {
        match self {
            Aggregation::MeanStd => 2 * num_coefficients,
            Aggregation::MeanOnly => num_coefficients,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MfccParams {
    pub num_coefficients: usize,
    pub num_mel_filters: usize,
    pub frame_ms: f64,
    pub hop_ms: f64,
    pub fmin_hz: f64,
    /// Upper filterbank edge; `None` (or anything above Nyquist) means Nyquist.
    pub fmax_hz: Option<f64>,
    pub log_floor: f64,
    pub aggregation: Aggregation,
}

impl Default for MfccParams {
    fn default() -> Self {
        Self {
            num_coefficients: 40,
            num_mel_filters: 64,
            frame_ms: 25.0,
            hop_ms: 10.0,
            fmin_hz: 0.0,
            fmax_hz: None,
            log_floor: 1e-10,
            aggregation: Aggregation::MeanStd,
        }
    }
}

impl MfccParams {
    pub fn feature_dimension(&self) -> usize {
        self.aggregation.dimension(self.num_coefficients)
    }

    /// Upper edge actually used at `sample_rate_hz`.
    pub fn effective_fmax(&self, sample_rate_hz: u32) -> f64 {
        let nyquist = f64::from(sample_rate_hz) / 2.0;
        self.fmax_hz.map_or(nyquist, |f| f.min(nyquist))
    }

    pub fn frame_len(&self, sample_rate_hz: u32) -> usize {
        ((self.frame_ms * f64::from(sample_rate_hz) / 1000.0).round() as usize).max(1)
    }

    pub fn hop_len(&self, sample_rate_hz: u32) -> usize {
        ((self.hop_ms * f64::from(sample_rate_hz) / 1000.0).round() as usize).max(1)
    }

    pub fn validate(&self, sample_rate_hz: u32) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.num_coefficients == 0 || self.num_coefficients > self.num_mel_filters {
            return bad(format!(
                "need 1 <= num_coefficients ({}) <= num_mel_filters ({})",
                self.num_coefficients, self.num_mel_filters
            ));
        }
        if !(self.frame_ms > 0.0 && self.hop_ms > 0.0) {
            return bad("frame_ms and hop_ms must be positive".into());
        }
        if !(self.log_floor > 0.0) {
            return bad("log_floor must be positive".into());
        }
        let fmax = self.effective_fmax(sample_rate_hz);
        if !(self.fmin_hz >= 0.0 && self.fmin_hz < fmax) {
            return bad(format!("need 0 <= fmin ({}) < fmax ({fmax})", self.fmin_hz));
        }
        Ok(())
    }
}
