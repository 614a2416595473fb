use super::vector::FeatureVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dimensions whose training std falls below this pass through untouched.
pub const DEGENERATE_STD: f64 = 1e-12;

/// Per-dimension z-score fitted on a training split.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalizer<T = f64> {
    mean: Vec<T>,
    std: Vec<T>,
}

impl<T: Real> Normalizer<T> {
    pub fn fit(train: &[FeatureVector<T>]) -> Result<Self> {
        let first = train
            .first()
            .ok_or_else(|| Error::InvalidInput("cannot fit a normalizer on no data".into()))?;
        let dim = first.dim();
        if train.iter().any(|v| v.dim() != dim) {
            return Err(Error::InvalidInput("training vectors differ in dimension".into()));
        }
        let n = T::of_usize(train.len());
        let mut mean = vec![T::zero(); dim];
        for v in train {
            for (m, &x) in mean.iter_mut().zip(v.values()) {
                *m += x;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![T::zero(); dim];
        for v in train {
            for ((s, &x), &m) in var.iter_mut().zip(v.values()).zip(&mean) {
                *s += (x - m).powi(2);
            }
        }
        let std = var.into_iter().map(|s| (s / n).sqrt()).collect();
        Ok(Self { mean, std })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[T] {
        &self.mean
    }

    pub fn std(&self) -> &[T] {
        &self.std
    }

    pub fn apply(&self, v: &FeatureVector<T>) -> Result<FeatureVector<T>> {
        if v.dim() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "vector has {} dimensions, normalizer expects {}",
                v.dim(),
                self.dim()
            )));
        }
        let tiny = T::of(DEGENERATE_STD);
        let values = v
            .values()
            .iter()
            .zip(self.mean.iter().zip(&self.std))
            .map(|(&x, (&m, &s))| if s < tiny { x } else { (x - m) / s })
            .collect();
        Ok(FeatureVector::new_unchecked(values, v.label().to_string()))
    }

    pub fn apply_all(&self, vs: &[FeatureVector<T>]) -> Result<Vec<FeatureVector<T>>> {
        vs.iter().map(|v| self.apply(v)).collect()
    }
}

pub fn fit_normalizer<T: Real>(train: &[FeatureVector<T>]) -> Result<Normalizer<T>> {
    Normalizer::fit(train)
}

pub fn apply_normalizer<T: Real>(n: &Normalizer<T>, v: &FeatureVector<T>) -> Result<FeatureVector<T>> {
    n.apply(v)
}
