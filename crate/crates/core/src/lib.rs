//! Minimum-viable-data analysis for audio classification.
//!
//! The pipeline degrades a labelled corpus along sample rate, bit depth and
//! clip length, featurizes every clip with MFCC statistics, measures
//! cross-validated accuracy at each grid point, and then locates knees,
//! the cost/accuracy Pareto frontier and the cheapest configuration that
//! retains a target fraction of the best accuracy.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`, which is what the CLI uses.

// Validation is written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audio;
pub mod classify;
pub mod degrade;
mod error;
pub mod features;
pub mod pareto;
pub mod report;
mod scalar;
pub mod sweep;

#[cfg(test)]
mod testkit;

pub use error::{Error, Result};
pub use scalar::Real;

pub use degrade::{ClipLength, DegradationConfig, ResampleMode};

/// Double-precision clip.
pub type Clip = audio::AudioClip<f64>;
/// Single-precision clip.
pub type Clip32 = audio::AudioClip<f32>;
pub type Features = features::FeatureVector<f64>;
pub type Features32 = features::FeatureVector<f32>;
pub type Model = classify::Model<f64>;
pub type Normalizer = features::Normalizer<f64>;
