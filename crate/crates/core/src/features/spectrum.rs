use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Real;

/// Reusable `|DFT|^2 / N` evaluator for frames of a fixed length `N`,
/// zero-padded to the next power of two.
pub struct PowerSpectrum<T: Real> {
    frame_len: usize,
    fft: Arc<dyn Fft<T>>,
    buffer: Vec<Complex<T>>,
    scratch: Vec<Complex<T>>,
}

impl<T: Real> PowerSpectrum<T> {
    pub fn new(frame_len: usize) -> Self {
        assert!(frame_len > 0, "frame must be non-empty");
        let size = fft_size(frame_len);
        let fft = FftPlanner::new().plan_fft_forward(size);
        let scratch = vec![Complex::default(); fft.get_inplace_scratch_len()];
        Self {
            frame_len,
            fft,
            buffer: vec![Complex::default(); size],
            scratch,
        }
    }

    pub fn fft_size(&self) -> usize {
        self.buffer.len()
    }

    pub fn num_bins(&self) -> usize {
        self.fft_size() / 2 + 1
    }

    pub fn compute_into(&mut self, frame: &[T], out: &mut Vec<T>) {
        debug_assert_eq!(frame.len(), self.frame_len);
        for (slot, v) in self
            .buffer
            .iter_mut()
            .zip(frame.iter().chain(std::iter::repeat(&T::zero())))
        {
            *slot = Complex::new(*v, T::zero());
        }
        self.fft.process_with_scratch(&mut self.buffer, &mut self.scratch);
        let norm = T::one() / T::of_usize(self.frame_len);
        out.clear();
        out.extend(self.buffer[..self.num_bins()].iter().map(|c| c.norm_sqr() * norm));
    }

    pub fn compute(&mut self, frame: &[T]) -> Vec<T> {
        let mut out = Vec::with_capacity(self.num_bins());
        self.compute_into(frame, &mut out);
        out
    }
}

pub fn fft_size(frame_len: usize) -> usize {
    frame_len.next_power_of_two()
}

/// One-shot power spectrum of a windowed frame.
pub fn power_spectrum<T: Real>(frame: &[T]) -> Vec<T> {
    PowerSpectrum::new(frame.len()).compute(frame)
}
