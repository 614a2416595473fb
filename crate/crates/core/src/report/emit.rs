use std::fs;
use std::path::{Path, PathBuf};

use super::analysis::AnalysisReport;
use super::svg::{charts_for, heat_grid_svg};
use crate::error::{Error, Result};
use crate::sweep::{save_results_csv, ResultRow};

/// Paths written by [`emit_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReportFiles {
    pub results_csv: PathBuf,
    pub analysis_json: PathBuf,
    pub charts: Vec<PathBuf>,
    pub heat_grid: Option<PathBuf>,
}

pub const RESULTS_FILE: &str = "results.csv";
pub const ANALYSIS_FILE: &str = "analysis.json";
pub const HEAT_GRID_FILE: &str = "accuracy_rate_depth.svg";

/// Pretty JSON with a trailing newline.
pub fn report_json(analysis: &AnalysisReport) -> Result<String> {
    let mut text = serde_json::to_string_pretty(analysis)?;
    text.push('\n');
    Ok(text)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes the results table, the analysis JSON, one chart per analyzed axis
/// and, for results that vary along both rate and depth, a heat grid.
pub fn emit_report(results: &[ResultRow], analysis: &AnalysisReport, out_dir: impl AsRef<Path>) -> Result<ReportFiles> {
    if results.is_empty() {
        return Err(Error::InvalidInput("no results to report".into()));
    }
    let dir = out_dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let results_csv = dir.join(RESULTS_FILE);
    save_results_csv(&results_csv, results)?;
    let analysis_json = dir.join(ANALYSIS_FILE);
    write(&analysis_json, &report_json(analysis)?)?;
    let mut charts = Vec::new();
    for (stem, svg) in charts_for(analysis) {
        let path = dir.join(format!("{stem}.svg"));
        write(&path, &svg)?;
        charts.push(path);
    }
    let heat_grid = match heat_grid_svg(results, Some(&analysis.mvd.config)) {
        Some(svg) => {
            let path = dir.join(HEAT_GRID_FILE);
            write(&path, &svg)?;
            Some(path)
        }
        None => None,
    };
    Ok(ReportFiles {
        results_csv,
        analysis_json,
        charts,
        heat_grid,
    })
}
