//! Seeded harmonic-tone corpora for exercising the pipeline end to end.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::clip::AudioClip;
use super::wav::pcm_code;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Harmonics per class tone; amplitude of harmonic k is 1/k.
pub const HARMONICS: usize = 3;
/// Noise standard deviation relative to the tone RMS (-20 dB).
pub const NOISE_RELATIVE_AMPLITUDE: f64 = 0.1;
pub const PEAK_LEVEL: f64 = 0.9;
/// Synthetic clips are stored on this PCM grid, like a 16-bit recording.
pub const SYNTH_BIT_DEPTH: u32 = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub num_classes: usize,
    pub clips_per_class: usize,
    pub sample_rate_hz: u32,
    pub duration_s: f64,
    pub seed: u64,
    /// Fundamental of the highest class.
    pub max_content_hz: f64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            num_classes: 5,
            clips_per_class: 40,
            sample_rate_hz: 44_100,
            duration_s: 2.0,
            seed: 0x5EED,
            max_content_hz: 1_500.0,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_classes < 2 {
            return Err(Error::InvalidSpec("num_classes must be at least 2".into()));
        }
        if self.clips_per_class < 4 {
            return Err(Error::InvalidSpec("clips_per_class must be at least 4".into()));
        }
        if self.sample_rate_hz == 0 {
            return Err(Error::InvalidSpec("sample rate must be positive".into()));
        }
        if !(self.duration_s > 0.0) || self.num_samples() == 0 {
            return Err(Error::InvalidSpec(format!(
                "duration {} s yields no samples",
                self.duration_s
            )));
        }
        let nyquist = f64::from(self.sample_rate_hz) / 2.0;
        if !(self.max_content_hz > 0.0 && self.max_content_hz < nyquist) {
            return Err(Error::InvalidSpec(format!(
                "max_content_hz {} must lie in (0, {nyquist})",
                self.max_content_hz
            )));
        }
        Ok(())
    }

    pub fn num_samples(&self) -> usize {
        (self.duration_s * f64::from(self.sample_rate_hz)).round() as usize
    }

    pub fn fundamental_hz(&self, class: usize) -> f64 {
        self.max_content_hz * (class + 1) as f64 / self.num_classes as f64
    }

    pub fn label(class: usize) -> String {
        format!("class_{class}")
    }
}

/// Class-major list of clips: all clips of class 0, then class 1, ...
pub fn generate_synthetic<T: Real>(spec: &SynthSpec) -> Result<Vec<AudioClip<T>>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.num_samples();
    let rate = f64::from(spec.sample_rate_hz);
    let mut clips = Vec::with_capacity(spec.num_classes * spec.clips_per_class);
    for class in 0..spec.num_classes {
        let f0 = spec.fundamental_hz(class);
        for index in 0..spec.clips_per_class {
            let phases: [f64; HARMONICS] = std::array::from_fn(|_| rng.random_range(0.0..TAU));
            let mut signal: Vec<f64> = (0..n)
                .map(|i| {
                    let t = i as f64 / rate;
                    (0..HARMONICS)
                        .map(|k| {
                            let h = (k + 1) as f64;
                            (TAU * h * f0 * t + phases[k]).sin() / h
                        })
                        .sum()
                })
                .collect();
            let rms = (signal.iter().map(|s| s * s).sum::<f64>() / n as f64).sqrt();
            let noise =
                Normal::new(0.0, NOISE_RELATIVE_AMPLITUDE * rms.max(f64::MIN_POSITIVE)).expect("finite positive std");
            for s in &mut signal {
                *s += noise.sample(&mut rng);
            }
            let peak = signal.iter().fold(0.0f64, |m, s| m.max(s.abs()));
            let gain = if peak > 0.0 { PEAK_LEVEL / peak } else { 0.0 };
            let full = f64::from(SYNTH_BIT_DEPTH - 1).exp2();
            let samples = signal
                .into_iter()
                .map(|s| T::of(pcm_code(s * gain, SYNTH_BIT_DEPTH) as f64 / full))
                .collect();
            clips.push(AudioClip::from_parts(
                samples,
                spec.sample_rate_hz,
                SYNTH_BIT_DEPTH,
                SynthSpec::label(class),
                format!("synth:seed={}:class={class}:clip={index}", spec.seed),
            ));
        }
    }
    Ok(clips)
}
