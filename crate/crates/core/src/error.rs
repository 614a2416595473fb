use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed RIFF/WAVE data: {0}")]
    Parse(String),
    #[error("unsupported audio format: {0}")]
    UnsupportedFormat(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),
    #[error("upsampling from {source_hz} Hz to {target_hz} Hz is not supported")]
    UpsampleUnsupported { source_hz: u32, target_hz: u32 },
    #[error("invalid sample rate: {0} Hz")]
    InvalidRate(i64),
    #[error("invalid bit depth {requested} (source depth {source_depth})")]
    InvalidDepth { requested: u32, source_depth: u32 },
    #[error("invalid clip length: {0} s")]
    InvalidLength(f64),
    #[error("mel filterbank degenerate: {0}")]
    FilterbankDegenerate(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("class {label:?} has {count} members but {folds} folds were requested")]
    InsufficientClassSize { label: String, count: usize, folds: usize },
    #[error("configuration {config} failed: {cause}")]
    ConfigFailed { config: String, cause: String },
    #[error("configuration exceeds the baseline on {0}")]
    InvalidBaseline(String),
    #[error("knee detection needs at least 3 points, got {0}")]
    InsufficientPoints(usize),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(f64),
    #[error("invalid sweep plan: {0}")]
    InvalidPlan(String),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
