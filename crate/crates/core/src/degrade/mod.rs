//! Fidelity reduction along the three swept axes: sample rate, bit depth and
//! clip length.

mod config;
mod fir;
mod ops;

pub use config::{ClipLength, DegradationConfig, ResampleMode};
pub use fir::{lowpass_sinc, ANTIALIAS_CUTOFF_RATIO, ANTIALIAS_TAPS};
pub use ops::{apply, check_applicable, quantize, quantize_sample, resample, resampled_len, truncate, Truncation};
