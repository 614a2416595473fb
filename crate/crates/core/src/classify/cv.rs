use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::config::TrainConfig;
use super::folds::stratified_folds;
use super::model::train;
use crate::error::Result;
use crate::features::{FeatureVector, Normalizer};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub mean_accuracy: f64,
    pub per_fold_accuracy: Vec<f64>,
    /// Sorted label vocabulary indexing `confusion`.
    pub labels: Vec<String>,
    /// `confusion[true][predicted]`, pooled over folds.
    pub confusion: Vec<Vec<u64>>,
}

/// Per-fold seed so each fold's SGD order is independent but reproducible.
fn fold_seed(seed: u64, fold: usize) -> u64 {
    seed.wrapping_add((fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Accuracy and pooled confusion counts for one train/test split. The
/// normalizer is fitted on `train_set` only.
pub fn evaluate_split<T: Real>(
    train_set: &[FeatureVector<T>],
    test_set: &[FeatureVector<T>],
    labels: &[String],
    cfg: &TrainConfig,
    confusion: &mut [Vec<u64>],
) -> Result<f64> {
    let normalizer = Normalizer::fit(train_set)?;
    let train_norm = normalizer.apply_all(train_set)?;
    let model = train(&train_norm, cfg)?;
    let index = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).expect("known label");
    let mut hits = 0usize;
    for v in test_set {
        let predicted = model.predict(&normalizer.apply(v)?)?;
        let (t, p) = (index(v.label()), index(predicted));
        confusion[t][p] += 1;
        if t == p {
            hits += 1;
        }
    }
    Ok(hits as f64 / test_set.len() as f64)
}

/// Stratified k-fold cross-validation.
pub fn cross_validate<T: Real>(features: &[FeatureVector<T>], cfg: &TrainConfig) -> Result<EvalResult> {
    cfg.validate()?;
    let folds = stratified_folds(features, cfg.folds, cfg.seed)?;
    let labels: Vec<String> = features
        .iter()
        .map(|v| v.label().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut confusion = vec![vec![0u64; labels.len()]; labels.len()];
    let mut in_fold = vec![0usize; features.len()];
    for (f, members) in folds.iter().enumerate() {
        for &i in members {
            in_fold[i] = f;
        }
    }
    let mut per_fold = Vec::with_capacity(folds.len());
    for (f, members) in folds.iter().enumerate() {
        let test: Vec<FeatureVector<T>> = members.iter().map(|&i| features[i].clone()).collect();
        let train_set: Vec<FeatureVector<T>> = features
            .iter()
            .zip(&in_fold)
            .filter(|(_, &g)| g != f)
            .map(|(v, _)| v.clone())
            .collect();
        let fold_cfg = TrainConfig {
            seed: fold_seed(cfg.seed, f),
            ..cfg.clone()
        };
        per_fold.push(evaluate_split(&train_set, &test, &labels, &fold_cfg, &mut confusion)?);
    }
    let mean_accuracy = per_fold.iter().sum::<f64>() / per_fold.len() as f64;
    Ok(EvalResult {
        mean_accuracy,
        per_fold_accuracy: per_fold,
        labels,
        confusion,
    })
}
