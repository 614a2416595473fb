use std::f64::consts::PI;

use crate::scalar::Real;

/// Orthonormal DCT-II basis: `rows[k][n] = s_k cos(pi (n + 1/2) k / M)`,
/// `s_0 = sqrt(1/M)`, `s_k = sqrt(2/M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dct<T = f64> {
    rows: Vec<Vec<T>>,
}

impl<T: Real> Dct<T> {
    pub fn new(size: usize) -> Self {
        let m = size as f64;
        let rows = (0..size)
            .map(|k| {
                let scale = if k == 0 { (1.0 / m).sqrt() } else { (2.0 / m).sqrt() };
                (0..size)
                    .map(|n| T::of(scale * (PI * (n as f64 + 0.5) * k as f64 / m).cos()))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// First `keep` DCT-II coefficients of `x`.
    pub fn forward_into(&self, x: &[T], keep: usize, out: &mut Vec<T>) {
        out.clear();
        out.extend(
            self.rows[..keep]
                .iter()
                .map(|row| row.iter().zip(x).map(|(&b, &v)| b * v).sum::<T>()),
        );
    }

    pub fn forward(&self, x: &[T]) -> Vec<T> {
        let mut out = Vec::with_capacity(self.size());
        self.forward_into(x, self.size(), &mut out);
        out
    }

    /// Inverse transform (DCT-III, the transpose of the orthonormal basis).
    pub fn inverse(&self, coeffs: &[T]) -> Vec<T> {
        (0..self.size())
            .map(|n| self.rows.iter().zip(coeffs).map(|(row, &c)| row[n] * c).sum::<T>())
            .collect()
    }
}
