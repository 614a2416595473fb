use crate::error::{Error, Result};
use crate::scalar::Real;

/// A mono PCM buffer with its provenance.
///
/// Amplitudes are normalized to `[-1, 1]`; `source_bit_depth` records the
/// precision the samples were captured (or last quantized) at.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip<T = f64> {
    samples: Vec<T>,
    sample_rate_hz: u32,
    source_bit_depth: u32,
    label: String,
    origin: String,
}

pub const MIN_BIT_DEPTH: u32 = 1;
pub const MAX_BIT_DEPTH: u32 = 32;

impl<T: Real> AudioClip<T> {
    pub fn new(
        samples: Vec<T>,
        sample_rate_hz: u32,
        source_bit_depth: u32,
        label: impl Into<String>,
        origin: impl Into<String>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("audio clip has no samples".into()));
        }
        if sample_rate_hz == 0 {
            return Err(Error::InvalidRate(0));
        }
        if !(MIN_BIT_DEPTH..=MAX_BIT_DEPTH).contains(&source_bit_depth) {
            return Err(Error::InvalidDepth {
                requested: source_bit_depth,
                source_depth: source_bit_depth,
            });
        }
        let one = T::one();
        if let Some(bad) = samples.iter().position(|s| !(s.abs() <= one)) {
            return Err(Error::InvalidInput(format!(
                "sample {bad} = {} lies outside [-1, 1]",
                samples[bad]
            )));
        }
        Ok(Self::from_parts(
            samples,
            sample_rate_hz,
            source_bit_depth,
            label.into(),
            origin.into(),
        ))
    }

    /// Builds a clip whose invariants the caller has already established.
    pub(crate) fn from_parts(
        samples: Vec<T>,
        sample_rate_hz: u32,
        source_bit_depth: u32,
        label: String,
        origin: String,
    ) -> Self {
        debug_assert!(!samples.is_empty() && sample_rate_hz > 0);
        Self {
            samples,
            sample_rate_hz,
            source_bit_depth,
            label,
            origin,
        }
    }

    /// Same metadata, new samples (and optionally a new rate / depth).
    pub(crate) fn with_samples(&self, samples: Vec<T>, sample_rate_hz: u32, bit_depth: u32) -> Self {
        Self::from_parts(
            samples,
            sample_rate_hz,
            bit_depth,
            self.label.clone(),
            self.origin.clone(),
        )
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn source_bit_depth(&self) -> u32 {
        self.source_bit_depth
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate_hz)
    }

    /// Converts the sample type, e.g. `f64` clips into `f32` clips.
    pub fn cast<U: Real>(&self) -> AudioClip<U> {
        AudioClip::from_parts(
            self.samples.iter().map(|s| U::of(s.to_f64_lossy())).collect(),
            self.sample_rate_hz,
            self.source_bit_depth,
            self.label.clone(),
            self.origin.clone(),
        )
    }
}

/// Channel-averages interleaved frames into a mono buffer.
pub fn mix_to_mono<T: Real>(interleaved: &[T], channels: usize) -> Vec<T> {
    if channels <= 1 {
        return interleaved.to_vec();
    }
    let scale = T::one() / T::of_usize(channels);
    interleaved
        .chunks_exact(channels)
        .map(|frame| frame.iter().copied().sum::<T>() * scale)
        .collect()
}
