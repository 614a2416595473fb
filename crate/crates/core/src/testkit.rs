//! Test-only signal helpers. The DFT here is a direct O(N^2) sum so spectral
//! checks stay independent of the FFT used by the feature extractor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::audio::AudioClip;

pub fn sine_clip(freq_hz: f64, rate: u32, seconds: f64, amplitude: f64) -> AudioClip {
    let n = (seconds * f64::from(rate)).round() as usize;
    let s = (0..n)
        .map(|i| amplitude * (std::f64::consts::TAU * freq_hz * i as f64 / f64::from(rate)).sin())
        .collect();
    AudioClip::new(s, rate, 16, "sine", "sine").unwrap()
}

/// Random samples lying exactly on the `bits`-bit PCM grid.
pub fn pcm_noise_clip(rate: u32, bits: u32, n: usize, seed: u64) -> AudioClip {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = 1i64 << (bits - 1);
    let s = (0..n)
        .map(|_| rng.random_range(-full..full) as f64 / full as f64)
        .collect();
    AudioClip::new(s, rate, bits, "noise", "noise").unwrap()
}

pub fn dft_power(x: &[f64], bin: usize) -> f64 {
    let n = x.len() as f64;
    let (re, im) = x.iter().enumerate().fold((0.0, 0.0), |(re, im), (t, &v)| {
        let w = std::f64::consts::TAU * bin as f64 * t as f64 / n;
        (re + v * w.cos(), im - v * w.sin())
    });
    re * re + im * im
}

/// Frequency of the strongest non-DC bin of a direct DFT.
pub fn dft_peak_hz(x: &[f64], rate: u32) -> f64 {
    let best = (1..=x.len() / 2)
        .max_by(|&a, &b| dft_power(x, a).total_cmp(&dft_power(x, b)))
        .unwrap();
    best as f64 * f64::from(rate) / x.len() as f64
}
