//! Lightweight classifiers and the stratified cross-validation protocol.

mod config;
mod cv;
mod folds;
mod model;

pub use config::{ModelKind, TrainConfig, DEFAULT_SEED};
pub use cv::{cross_validate, evaluate_split, EvalResult};
pub use folds::{stratified_folds, stratified_folds_by_label};
pub use model::{train, train_with_history, Classifier, KnnModel, LinearLoss, LinearModel, Model};
