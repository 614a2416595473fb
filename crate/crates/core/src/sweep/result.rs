use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::cost::CostBreakdown;
use crate::classify::EvalResult;
use crate::degrade::{ClipLength, DegradationConfig};
use crate::error::{Error, Result};

/// Accuracy and cost of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// The grid point, with `full` resolved to the corpus's nominal length.
    pub config: DegradationConfig,
    pub eval: EvalResult,
    pub cost: CostBreakdown,
    pub wall_time_s: f64,
    /// Clips that could not be degraded to this configuration.
    pub excluded_clips: usize,
}

/// Anything with a configuration, an accuracy and a byte cost; the analysis
/// functions work on full results and on rows read back from CSV alike.
pub trait Tradeoff {
    fn config(&self) -> &DegradationConfig;
    fn accuracy(&self) -> f64;
    fn bytes_per_clip(&self) -> u64;
    fn relative_cost(&self) -> f64;

    fn clip_length_s(&self) -> f64 {
        self.config().clip_length.seconds().unwrap_or(f64::INFINITY)
    }
}

impl Tradeoff for SweepResult {
    fn config(&self) -> &DegradationConfig {
        &self.config
    }
    fn accuracy(&self) -> f64 {
        self.eval.mean_accuracy
    }
    fn bytes_per_clip(&self) -> u64 {
        self.cost.bytes_per_clip
    }
    fn relative_cost(&self) -> f64 {
        self.cost.relative_cost
    }
}

/// One line of the results CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub config: DegradationConfig,
    pub mean_accuracy: f64,
    pub fold_accuracies: Vec<f64>,
    pub bytes_per_clip: u64,
    pub relative_cost: f64,
    pub wall_time_s: f64,
}

impl Tradeoff for ResultRow {
    fn config(&self) -> &DegradationConfig {
        &self.config
    }
    fn accuracy(&self) -> f64 {
        self.mean_accuracy
    }
    fn bytes_per_clip(&self) -> u64 {
        self.bytes_per_clip
    }
    fn relative_cost(&self) -> f64 {
        self.relative_cost
    }
}

impl From<&SweepResult> for ResultRow {
    fn from(r: &SweepResult) -> Self {
        Self {
            config: r.config,
            mean_accuracy: r.eval.mean_accuracy,
            fold_accuracies: r.eval.per_fold_accuracy.clone(),
            bytes_per_clip: r.cost.bytes_per_clip,
            relative_cost: r.cost.relative_cost,
            wall_time_s: r.wall_time_s,
        }
    }
}

pub const RESULTS_HEADER: [&str; 8] = [
    "sample_rate_hz",
    "bit_depth",
    "clip_length_s",
    "mean_accuracy",
    "fold_accuracies",
    "bytes_per_clip",
    "relative_cost",
    "wall_time_s",
];

/// Serializes rows; floats use the shortest representation that parses back
/// to the same value, and fold accuracies are `;`-separated.
pub fn write_results_csv<W: Write>(out: W, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for r in rows {
        let folds = r
            .fold_accuracies
            .iter()
            .map(f64::to_string)
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            r.config.sample_rate_hz.to_string(),
            r.config.bit_depth.to_string(),
            r.config.clip_length.to_string(),
            r.mean_accuracy.to_string(),
            folds,
            r.bytes_per_clip.to_string(),
            r.relative_cost.to_string(),
            r.wall_time_s.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<results>", e))
}

pub fn save_results_csv(path: impl AsRef<Path>, rows: &[ResultRow]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_results_csv(file, rows)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let raw = rec.get(i).unwrap_or("").trim();
    raw.parse()
        .map_err(|_| Error::InvalidInput(format!("results line {line}: bad {} value {raw:?}", RESULTS_HEADER[i])))
}

pub fn read_results_csv<R: std::io::Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != RESULTS_HEADER {
        return Err(Error::InvalidInput(format!(
            "results header must be `{}`",
            RESULTS_HEADER.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (n, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = n + 2;
        let clip_length: ClipLength = rec[2]
            .parse()
            .map_err(|e: String| Error::InvalidInput(format!("results line {line}: {e}")))?;
        let fold_accuracies = rec[4]
            .split(';')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("results line {line}: bad fold accuracy {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(ResultRow {
            config: DegradationConfig::new(field(&rec, 0, line)?, field(&rec, 1, line)?, clip_length),
            mean_accuracy: field(&rec, 3, line)?,
            fold_accuracies,
            bytes_per_clip: field(&rec, 5, line)?,
            relative_cost: field(&rec, 6, line)?,
            wall_time_s: field(&rec, 7, line)?,
        });
    }
    Ok(rows)
}

pub fn load_results_csv(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_results_csv(file)
}
