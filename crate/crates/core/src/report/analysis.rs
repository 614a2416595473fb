use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::degrade::DegradationConfig;
use crate::error::{Error, Result};
use crate::pareto::{knee, pareto_frontier, select_mvd, CurvePoint, KneeReport, MvdSelection};
use crate::sweep::Tradeoff;

/// Resource axis of an accuracy curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Bytes,
    Rate,
    Depth,
    Length,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::Bytes, Axis::Rate, Axis::Depth, Axis::Length];

    pub fn unit(self) -> &'static str {
        match self {
            Axis::Bytes => "bytes per clip",
            Axis::Rate => "sample rate (Hz)",
            Axis::Depth => "bit depth (bits)",
            Axis::Length => "clip length (s)",
        }
    }

    fn value<R: Tradeoff>(self, r: &R) -> f64 {
        let c = r.config();
        match self {
            Axis::Bytes => r.bytes_per_clip() as f64,
            Axis::Rate => f64::from(c.sample_rate_hz),
            Axis::Depth => f64::from(c.bit_depth),
            Axis::Length => r.clip_length_s(),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Bytes => "bytes",
            Axis::Rate => "rate",
            Axis::Depth => "depth",
            Axis::Length => "length",
        })
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bytes" => Ok(Axis::Bytes),
            "rate" | "sample_rate" => Ok(Axis::Rate),
            "depth" | "bit_depth" => Ok(Axis::Depth),
            "length" | "clip_length" => Ok(Axis::Length),
            other => Err(format!("unknown axis {other:?}; expected bytes, rate, depth or length")),
        }
    }
}

/// Accuracy against one resource axis.
///
/// For the rate, depth and length axes the other two axes are held at their
/// highest values in the results. The bytes axis is the Pareto frontier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisCurve {
    pub axis: Axis,
    pub points: Vec<CurvePoint>,
    /// Configuration behind each point, in the same order.
    pub configs: Vec<DegradationConfig>,
    /// Absent when the curve has fewer than three points.
    pub knee: Option<KneeReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierEntry {
    pub config: DegradationConfig,
    pub bytes_per_clip: u64,
    pub accuracy: f64,
    pub relative_cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavingsSummary {
    /// The most expensive configuration in the results.
    pub baseline: DegradationConfig,
    pub baseline_bytes_per_clip: u64,
    pub mvd_bytes_per_clip: u64,
    pub relative_cost: f64,
    pub bytes_saved_per_clip: u64,
    pub bytes_saved_per_1000_clips: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub result_count: usize,
    pub curves: Vec<AxisCurve>,
    pub frontier: Vec<FrontierEntry>,
    pub mvd: MvdSelection,
    pub savings: SavingsSummary,
}

impl AnalysisReport {
    pub fn curve(&self, axis: Axis) -> Option<&AxisCurve> {
        self.curves.iter().find(|c| c.axis == axis)
    }
}

fn config_key(c: &DegradationConfig, length: f64) -> (u32, u32, u64) {
    (c.sample_rate_hz, c.bit_depth, length.to_bits())
}

fn build_curve<R: Tradeoff>(axis: Axis, members: Vec<&R>) -> Result<AxisCurve> {
    let points: Vec<CurvePoint> = members
        .iter()
        .map(|r| CurvePoint::new(axis.value(*r), r.accuracy()))
        .collect();
    let configs = members.iter().map(|r| *r.config()).collect();
    let knee = if points.len() >= 3 { Some(knee(&points)?) } else { None };
    Ok(AxisCurve {
        axis,
        points,
        configs,
        knee,
    })
}

fn axis_curve<R: Tradeoff + Clone>(axis: Axis, results: &[R]) -> Result<AxisCurve> {
    if axis == Axis::Bytes {
        let frontier = pareto_frontier(results);
        return build_curve(axis, frontier.iter().collect());
    }
    let max_of = |a: Axis| results.iter().map(|r| a.value(r)).fold(f64::NEG_INFINITY, f64::max);
    let fixed: Vec<Axis> = [Axis::Rate, Axis::Depth, Axis::Length]
        .into_iter()
        .filter(|&a| a != axis)
        .collect();
    let tops: Vec<f64> = fixed.iter().map(|&a| max_of(a)).collect();
    let mut members: Vec<&R> = results
        .iter()
        .filter(|r| fixed.iter().zip(&tops).all(|(&a, &top)| a.value(*r) == top))
        .collect();
    members.sort_by(|a, b| axis.value(*a).total_cmp(&axis.value(*b)));
    build_curve(axis, members)
}

/// Axes along which the results take more than one value, plus bytes.
pub fn varied_axes<R: Tradeoff>(results: &[R]) -> Vec<Axis> {
    let mut axes = vec![Axis::Bytes];
    for axis in [Axis::Rate, Axis::Depth, Axis::Length] {
        let distinct: BTreeSet<u64> = results.iter().map(|r| axis.value(r).to_bits()).collect();
        if distinct.len() > 1 {
            axes.push(axis);
        }
    }
    axes
}

/// Builds per-axis curves with knees, the frontier, the MVD selection at
/// `theta` and the savings it implies. `axes = None` analyzes every axis the
/// results vary along.
pub fn analyze<R: Tradeoff + Clone>(results: &[R], theta: f64, axes: Option<&[Axis]>) -> Result<AnalysisReport> {
    if results.is_empty() {
        return Err(Error::InvalidInput("no results to analyze".into()));
    }
    let mut seen = BTreeSet::new();
    for r in results {
        let length = r.clip_length_s();
        if !length.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{}: clip length must be numeric",
                r.config()
            )));
        }
        if !seen.insert(config_key(r.config(), length)) {
            return Err(Error::InvalidInput(format!("duplicate grid point {}", r.config())));
        }
    }
    let axes: Vec<Axis> = match axes {
        Some(a) => a.to_vec(),
        None => varied_axes(results),
    };
    let curves = axes
        .iter()
        .map(|&a| axis_curve(a, results))
        .collect::<Result<Vec<_>>>()?;
    let frontier = pareto_frontier(results)
        .iter()
        .map(|r| FrontierEntry {
            config: *r.config(),
            bytes_per_clip: r.bytes_per_clip(),
            accuracy: r.accuracy(),
            relative_cost: r.relative_cost(),
        })
        .collect();
    let mvd = select_mvd(results, theta)?;
    let baseline = results
        .iter()
        .reduce(|a, b| if b.bytes_per_clip() > a.bytes_per_clip() { b } else { a })
        .expect("results are non-empty");
    let saved = baseline.bytes_per_clip() - mvd.bytes_per_clip;
    let savings = SavingsSummary {
        baseline: *baseline.config(),
        baseline_bytes_per_clip: baseline.bytes_per_clip(),
        mvd_bytes_per_clip: mvd.bytes_per_clip,
        relative_cost: mvd.relative_cost,
        bytes_saved_per_clip: saved,
        bytes_saved_per_1000_clips: saved * 1000,
    };
    Ok(AnalysisReport {
        result_count: results.len(),
        curves,
        frontier,
        mvd,
        savings,
    })
}
