use super::dct::Dct;
use super::frame::{frame_geometry, hann, windowed_frame};
use super::mel::{mel_filterbank, MelFilterbank};
use super::params::{Aggregation, MfccParams};
use super::spectrum::{fft_size, PowerSpectrum};
use super::vector::FeatureVector;
use crate::audio::AudioClip;
use crate::error::Result;
use crate::scalar::Real;

/// Row-major `frames x coefficients` matrix.
pub type MfccMatrix<T = f64> = Vec<Vec<T>>;

/// Precomputed window, filterbank, DCT and FFT plan for one sample rate.
pub struct MfccExtractor<T: Real> {
    params: MfccParams,
    sample_rate_hz: u32,
    window: Vec<T>,
    spectrum: PowerSpectrum<T>,
    filterbank: MelFilterbank<T>,
    dct: Dct<T>,
}

impl<T: Real> MfccExtractor<T> {
    pub fn new(params: &MfccParams, sample_rate_hz: u32) -> Result<Self> {
        params.validate(sample_rate_hz)?;
        let frame_len = params.frame_len(sample_rate_hz);
        let filterbank = mel_filterbank(params, sample_rate_hz, fft_size(frame_len))?;
        Ok(Self {
            params: params.clone(),
            sample_rate_hz,
            window: hann(frame_len),
            spectrum: PowerSpectrum::new(frame_len),
            dct: Dct::new(params.num_mel_filters),
            filterbank,
        })
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn params(&self) -> &MfccParams {
        &self.params
    }

    pub fn filterbank(&self) -> &MelFilterbank<T> {
        &self.filterbank
    }

    pub fn compute(&mut self, samples: &[T]) -> MfccMatrix<T> {
        let geom = frame_geometry(samples.len(), self.sample_rate_hz, &self.params);
        let floor = T::of(self.params.log_floor);
        let keep = self.params.num_coefficients;
        let mut power = Vec::new();
        let mut mel = Vec::new();
        (0..geom.count)
            .map(|f| {
                let frame = windowed_frame(samples, f * geom.hop_len, &self.window);
                self.spectrum.compute_into(&frame, &mut power);
                self.filterbank.apply_into(&power, &mut mel);
                for e in &mut mel {
                    *e = e.max(floor).ln();
                }
                let mut coeffs = Vec::with_capacity(keep);
                self.dct.forward_into(&mel, keep, &mut coeffs);
                coeffs
            })
            .collect()
    }

    pub fn featurize(&mut self, clip: &AudioClip<T>) -> FeatureVector<T> {
        assert_eq!(
            clip.sample_rate_hz(),
            self.sample_rate_hz,
            "extractor built for another rate"
        );
        let matrix = self.compute(clip.samples());
        aggregate(&matrix, clip.label(), self.params.aggregation)
    }
}

pub fn mfcc<T: Real>(clip: &AudioClip<T>, params: &MfccParams) -> Result<MfccMatrix<T>> {
    Ok(MfccExtractor::new(params, clip.sample_rate_hz())?.compute(clip.samples()))
}

/// Clip-level statistics over frames. Constant columns get a std of exactly 0.
pub fn aggregate<T: Real>(matrix: &[Vec<T>], label: &str, aggregation: Aggregation) -> FeatureVector<T> {
    assert!(!matrix.is_empty(), "aggregate needs at least one frame");
    let width = matrix[0].len();
    let n = T::of_usize(matrix.len());
    let mut means = Vec::with_capacity(width);
    let mut stds = Vec::with_capacity(width);
    for j in 0..width {
        let first = matrix[0][j];
        let mean = matrix.iter().map(|r| r[j]).sum::<T>() / n;
        let std = if matrix.iter().all(|r| r[j] == first) {
            T::zero()
        } else {
            (matrix.iter().map(|r| (r[j] - mean).powi(2)).sum::<T>() / n).sqrt()
        };
        means.push(if std == T::zero() { first } else { mean });
        stds.push(std);
    }
    let values = match aggregation {
        Aggregation::MeanStd => {
            means.extend(stds);
            means
        }
        Aggregation::MeanOnly => means,
    };
    FeatureVector::new_unchecked(values, label.to_string())
}

/// Clip to feature vector with a one-off extractor.
pub fn featurize<T: Real>(clip: &AudioClip<T>, params: &MfccParams) -> Result<FeatureVector<T>> {
    Ok(MfccExtractor::new(params, clip.sample_rate_hz())?.featurize(clip))
}
