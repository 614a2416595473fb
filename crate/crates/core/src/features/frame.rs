use std::f64::consts::TAU;

use super::params::MfccParams;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameGeometry {
    pub frame_len: usize,
    pub hop_len: usize,
    pub count: usize,
}

/// `1 + floor((len - N) / H)` frames, or a single zero-padded frame when the
/// signal is shorter than one frame.
pub fn frame_geometry(len: usize, sample_rate_hz: u32, params: &MfccParams) -> FrameGeometry {
    let frame_len = params.frame_len(sample_rate_hz);
    let hop_len = params.hop_len(sample_rate_hz);
    let count = if len <= frame_len {
        1
    } else {
        1 + (len - frame_len) / hop_len
    };
    FrameGeometry {
        frame_len,
        hop_len,
        count,
    }
}

/// Periodic Hann window.
pub fn hann<T: Real>(n: usize) -> Vec<T> {
    (0..n)
        .map(|i| T::of(0.5 - 0.5 * (TAU * i as f64 / n as f64).cos()))
        .collect()
}

/// Splits `samples` into Hann-windowed frames.
pub fn frame_signal<T: Real>(samples: &[T], sample_rate_hz: u32, params: &MfccParams) -> Vec<Vec<T>> {
    let geom = frame_geometry(samples.len(), sample_rate_hz, params);
    let window = hann::<T>(geom.frame_len);
    (0..geom.count)
        .map(|f| windowed_frame(samples, f * geom.hop_len, &window))
        .collect()
}

pub(crate) fn windowed_frame<T: Real>(samples: &[T], start: usize, window: &[T]) -> Vec<T> {
    window
        .iter()
        .enumerate()
        .map(|(i, &w)| samples.get(start + i).map_or(T::zero(), |&s| s * w))
        .collect()
}
