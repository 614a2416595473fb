use std::f64::consts::PI;

use crate::scalar::Real;

pub const ANTIALIAS_TAPS: usize = 127;
/// Low-pass corner as a fraction of the target sample rate.
pub const ANTIALIAS_CUTOFF_RATIO: f64 = 0.45;

/// Linear-phase low-pass FIR: Blackman-windowed sinc with unity DC gain.
/// `cutoff` is in cycles per sample (0, 0.5).
pub fn lowpass_sinc<T: Real>(taps: usize, cutoff: f64) -> Vec<T> {
    assert!(taps % 2 == 1, "odd tap count keeps the delay an integer");
    let mid = (taps / 2) as f64;
    let denom = (taps - 1) as f64;
    let raw: Vec<f64> = (0..taps)
        .map(|n| {
            let t = n as f64 - mid;
            let sinc = if t == 0.0 {
                2.0 * cutoff
            } else {
                (2.0 * PI * cutoff * t).sin() / (PI * t)
            };
            let w = 0.42 - 0.5 * (2.0 * PI * n as f64 / denom).cos() + 0.08 * (4.0 * PI * n as f64 / denom).cos();
            sinc * w
        })
        .collect();
    let gain: f64 = raw.iter().sum();
    raw.into_iter().map(|h| T::of(h / gain)).collect()
}
