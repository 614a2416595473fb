use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{ModelKind, TrainConfig};
use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearLoss {
    Hinge,
    Logistic,
}

/// One weight vector and bias per class (one-vs-rest).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel<T = f64> {
    pub loss: LinearLoss,
    pub weights: Vec<Vec<T>>,
    pub bias: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel<T = f64> {
    pub k: usize,
    pub points: Vec<Vec<T>>,
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classifier<T = f64> {
    Linear(LinearModel<T>),
    Knn(KnnModel<T>),
}

/// A trained classifier plus the label vocabulary it predicts over.
/// Class indices follow the sorted label order.
#[derive(Debug, Clone, PartialEq)]
pub struct Model<T = f64> {
    labels: Vec<String>,
    dim: usize,
    classifier: Classifier<T>,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn sq_dist<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

struct Prepared<'a, T> {
    labels: Vec<String>,
    targets: Vec<usize>,
    rows: Vec<&'a [T]>,
    dim: usize,
}

fn prepare<'a, T: Real>(train: &'a [FeatureVector<T>], cfg: &TrainConfig) -> Result<Prepared<'a, T>> {
    cfg.validate()?;
    let first = train
        .first()
        .ok_or_else(|| Error::InvalidInput("empty training set".into()))?;
    let dim = first.dim();
    if train.iter().any(|v| v.dim() != dim) {
        return Err(Error::InvalidInput("training vectors differ in dimension".into()));
    }
    let labels: Vec<String> = train
        .iter()
        .map(|v| v.label().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if labels.len() < 2 {
        return Err(Error::InvalidInput("training set has a single class".into()));
    }
    let targets = train
        .iter()
        .map(|v| {
            labels
                .binary_search_by(|l| l.as_str().cmp(v.label()))
                .expect("label present")
        })
        .collect();
    Ok(Prepared {
        labels,
        targets,
        rows: train.iter().map(FeatureVector::values).collect(),
        dim,
    })
}

/// Regularized objective of one binary problem: mean loss + lambda/2 |w|^2.
fn binary_objective<T: Real>(loss: LinearLoss, w: &[T], b: T, rows: &[&[T]], signs: &[T], lambda: f64) -> f64 {
    let total: f64 = rows
        .iter()
        .zip(signs)
        .map(|(x, &y)| {
            let margin = (y * (dot(w, x) + b)).to_f64_lossy();
            match loss {
                LinearLoss::Hinge => (1.0 - margin).max(0.0),
                LinearLoss::Logistic => (-margin).exp().ln_1p(),
            }
        })
        .sum();
    let norm: f64 = w.iter().map(|v| v.to_f64_lossy().powi(2)).sum();
    total / rows.len() as f64 + 0.5 * lambda * norm
}

fn train_linear<T: Real>(
    p: &Prepared<'_, T>,
    cfg: &TrainConfig,
    loss: LinearLoss,
    history: Option<&mut Vec<f64>>,
) -> LinearModel<T> {
    let classes = p.labels.len();
    let n = p.rows.len();
    let lambda = T::of(cfg.l2_lambda);
    let lr0 = cfg.learning_rate;
    let mut weights = vec![vec![T::zero(); p.dim]; classes];
    let mut bias = vec![T::zero(); classes];
    let signs: Vec<Vec<T>> = (0..classes)
        .map(|c| {
            p.targets
                .iter()
                .map(|&t| if t == c { T::one() } else { -T::one() })
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut t: u64 = 0;
    let mut history = history;
    let objective = |weights: &[Vec<T>], bias: &[T]| -> f64 {
        (0..classes)
            .map(|c| binary_objective(loss, &weights[c], bias[c], &p.rows, &signs[c], cfg.l2_lambda))
            .sum()
    };
    if let Some(h) = history.as_deref_mut() {
        h.push(objective(&weights, &bias));
    }
    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = T::of(lr0 / (1.0 + lr0 * cfg.l2_lambda * t as f64));
            let shrink = T::one() - eta * lambda;
            let x = p.rows[i];
            for c in 0..classes {
                let y = signs[c][i];
                let w = &mut weights[c];
                let margin = y * (dot(w, x) + bias[c]);
                // gradient scale of the data term with respect to the score
                let g = match loss {
                    LinearLoss::Hinge => {
                        if margin < T::one() {
                            y
                        } else {
                            T::zero()
                        }
                    }
                    LinearLoss::Logistic => y / (T::one() + margin.exp()),
                };
                for (wj, &xj) in w.iter_mut().zip(x) {
                    *wj = *wj * shrink + eta * g * xj;
                }
                bias[c] += eta * g;
            }
        }
        if let Some(h) = history.as_deref_mut() {
            h.push(objective(&weights, &bias));
        }
    }
    LinearModel { loss, weights, bias }
}

pub fn train<T: Real>(train_set: &[FeatureVector<T>], cfg: &TrainConfig) -> Result<Model<T>> {
    let p = prepare(train_set, cfg)?;
    let classifier = match cfg.model {
        ModelKind::LinearSvm => Classifier::Linear(train_linear(&p, cfg, LinearLoss::Hinge, None)),
        ModelKind::Logistic => Classifier::Linear(train_linear(&p, cfg, LinearLoss::Logistic, None)),
        ModelKind::Knn => Classifier::Knn(KnnModel {
            k: cfg.k,
            points: p.rows.iter().map(|r| r.to_vec()).collect(),
            classes: p.targets.clone(),
        }),
    };
    Ok(Model {
        labels: p.labels,
        dim: p.dim,
        classifier,
    })
}

/// Trains a linear model and reports the summed one-vs-rest objective at
/// initialization and after every full epoch (`epochs + 1` values).
pub fn train_with_history<T: Real>(train_set: &[FeatureVector<T>], cfg: &TrainConfig) -> Result<(Model<T>, Vec<f64>)> {
    let p = prepare(train_set, cfg)?;
    let loss = match cfg.model {
        ModelKind::LinearSvm => LinearLoss::Hinge,
        ModelKind::Logistic => LinearLoss::Logistic,
        ModelKind::Knn => return Err(Error::InvalidInput("knn has no training objective".into())),
    };
    let mut history = Vec::with_capacity(cfg.epochs + 1);
    let linear = train_linear(&p, cfg, loss, Some(&mut history));
    Ok((
        Model {
            labels: p.labels,
            dim: p.dim,
            classifier: Classifier::Linear(linear),
        },
        history,
    ))
}

impl<T: Real> Model<T> {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classifier(&self) -> &Classifier<T> {
        &self.classifier
    }

    /// Builds a linear model directly, e.g. from exported weights.
    pub fn from_linear(labels: Vec<String>, linear: LinearModel<T>) -> Result<Self> {
        let dim = linear.weights.first().map_or(0, Vec::len);
        if labels.len() != linear.weights.len()
            || labels.len() != linear.bias.len()
            || linear.weights.iter().any(|w| w.len() != dim)
        {
            return Err(Error::InvalidInput("inconsistent linear model shape".into()));
        }
        Ok(Self {
            labels,
            dim,
            classifier: Classifier::Linear(linear),
        })
    }

    pub fn predict_index(&self, v: &FeatureVector<T>) -> Result<usize> {
        if v.dim() != self.dim {
            return Err(Error::InvalidInput(format!(
                "feature dimension {} does not match model dimension {}",
                v.dim(),
                self.dim
            )));
        }
        let x = v.values();
        Ok(match &self.classifier {
            Classifier::Linear(m) => {
                let mut best = 0;
                let mut best_score = T::neg_infinity();
                for (c, (w, &b)) in m.weights.iter().zip(&m.bias).enumerate() {
                    let s = dot(w, x) + b;
                    // strict comparison keeps the lowest index on ties
                    if s > best_score {
                        best = c;
                        best_score = s;
                    }
                }
                best
            }
            Classifier::Knn(m) => knn_vote(m, x, self.labels.len()),
        })
    }

    pub fn predict(&self, v: &FeatureVector<T>) -> Result<&str> {
        Ok(&self.labels[self.predict_index(v)?])
    }
}

/// Majority vote over the k nearest points (distance ties by index); vote
/// ties go to the tied class with the single nearest neighbour.
fn knn_vote<T: Real>(m: &KnnModel<T>, x: &[T], num_classes: usize) -> usize {
    let mut dists: Vec<(T, usize)> = m.points.iter().map(|p| sq_dist(p, x)).zip(0..).collect();
    let k = m.k.min(dists.len());
    let by_distance = |a: &(T, usize), b: &(T, usize)| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.cmp(&b.1))
    };
    if k < dists.len() {
        dists.select_nth_unstable_by(k - 1, by_distance);
        dists.truncate(k);
    }
    dists.sort_by(by_distance);
    let mut votes = vec![0usize; num_classes];
    for &(_, i) in &dists {
        votes[m.classes[i]] += 1;
    }
    let top = *votes.iter().max().expect("at least one class");
    dists
        .iter()
        .map(|&(_, i)| m.classes[i])
        .find(|&c| votes[c] == top)
        .expect("a top-voted class has a neighbour")
}
