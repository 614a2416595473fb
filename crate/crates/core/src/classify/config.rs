use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// One-vs-rest hinge loss with L2, trained by SGD.
    #[default]
    #[serde(alias = "svm")]
    LinearSvm,
    /// k nearest neighbours, Euclidean.
    Knn,
    /// One-vs-rest logistic regression, trained by SGD.
    Logistic,
}

impl std::str::FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "svm" | "linear_svm" | "linear-svm" => Ok(ModelKind::LinearSvm),
            "knn" => Ok(ModelKind::Knn),
            "logistic" | "logreg" => Ok(ModelKind::Logistic),
            _ => Err(format!("unknown model {s:?} (expected svm, knn or logistic)")),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::LinearSvm => "svm",
            ModelKind::Knn => "knn",
            ModelKind::Logistic => "logistic",
        })
    }
}

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub model: ModelKind,
    pub seed: u64,
    pub epochs: usize,
    pub l2_lambda: f64,
    /// Initial SGD step; decays as `lr / (1 + lr * lambda * t)`.
    pub learning_rate: f64,
    pub folds: usize,
    /// Neighbour count for `knn`.
    pub k: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            model: ModelKind::LinearSvm,
            seed: DEFAULT_SEED,
            epochs: 50,
            l2_lambda: 1e-4,
            learning_rate: 0.1,
            folds: 5,
            k: 5,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::InvalidInput("epochs must be at least 1".into()));
        }
        if self.folds < 2 {
            return Err(Error::InvalidInput("folds must be at least 2".into()));
        }
        if !(self.l2_lambda >= 0.0 && self.l2_lambda.is_finite()) {
            return Err(Error::InvalidInput("l2_lambda must be finite and >= 0".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidInput("learning_rate must be positive".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        Ok(())
    }
}
