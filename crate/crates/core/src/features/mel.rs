use super::params::MfccParams;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

pub fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

/// Triangular mel filters over the `fft_size / 2 + 1` one-sided bins.
#[derive(Debug, Clone, PartialEq)]
pub struct MelFilterbank<T = f64> {
    weights: Vec<Vec<T>>,
    centers_hz: Vec<f64>,
}

impl<T: Real> MelFilterbank<T> {
    pub fn rows(&self) -> &[Vec<T>] {
        &self.weights
    }

    pub fn centers_hz(&self) -> &[f64] {
        &self.centers_hz
    }

    pub fn num_filters(&self) -> usize {
        self.weights.len()
    }

    /// `out[m] = sum_k W[m][k] * power[k]`.
    pub fn apply_into(&self, power: &[T], out: &mut Vec<T>) {
        out.clear();
        out.extend(
            self.weights
                .iter()
                .map(|row| row.iter().zip(power).map(|(&w, &p)| w * p).sum::<T>()),
        );
    }
}

/// Integral of the unit-peak triangle `(left, center, right)` from -inf to `x`.
fn triangle_cdf(x: f64, left: f64, center: f64, right: f64) -> f64 {
    if x <= left {
        0.0
    } else if x <= center {
        (x - left).powi(2) / (2.0 * (center - left))
    } else if x <= right {
        (center - left) / 2.0 + (right - center) / 2.0 - (right - x).powi(2) / (2.0 * (right - center))
    } else {
        (right - left) / 2.0
    }
}

/// Builds `num_mel_filters` triangles with centers uniformly spaced in mel
/// between `fmin_hz` and the effective `fmax`.
///
/// Each weight is the triangle's mean over the frequency span of its FFT bin
/// (`k * df ± df / 2`), so filters narrower than one bin still pick up the
/// bin they fall in instead of vanishing between bin centers.
pub fn mel_filterbank<T: Real>(params: &MfccParams, sample_rate_hz: u32, fft_size: usize) -> Result<MelFilterbank<T>> {
    params.validate(sample_rate_hz)?;
    let num_bins = fft_size / 2 + 1;
    let m = params.num_mel_filters;
    if m > num_bins {
        return Err(Error::FilterbankDegenerate(format!(
            "{m} filters exceed the {num_bins} bins of a {fft_size}-point FFT at {sample_rate_hz} Hz"
        )));
    }
    let lo = hz_to_mel(params.fmin_hz);
    let hi = hz_to_mel(params.effective_fmax(sample_rate_hz));
    let edges: Vec<f64> = (0..m + 2)
        .map(|i| mel_to_hz(lo + (hi - lo) * i as f64 / (m + 1) as f64))
        .collect();
    let df = f64::from(sample_rate_hz) / fft_size as f64;
    let mut weights = Vec::with_capacity(m);
    for (row_index, tri) in edges.windows(3).enumerate() {
        let (l, c, r) = (tri[0], tri[1], tri[2]);
        let row: Vec<T> = (0..num_bins)
            .map(|k| {
                let f = k as f64 * df;
                let area = triangle_cdf(f + df / 2.0, l, c, r) - triangle_cdf(f - df / 2.0, l, c, r);
                T::of(area / df)
            })
            .collect();
        if row.iter().all(|w| *w <= T::zero()) {
            return Err(Error::FilterbankDegenerate(format!(
                "filter {row_index} covers no bins"
            )));
        }
        weights.push(row);
    }
    Ok(MelFilterbank {
        weights,
        centers_hz: edges[1..=m].to_vec(),
    })
}
