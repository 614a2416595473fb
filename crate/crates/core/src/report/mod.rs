//! Analysis reports and static SVG charts.

mod analysis;
mod emit;
mod svg;

pub use analysis::{analyze, varied_axes, AnalysisReport, Axis, AxisCurve, FrontierEntry, SavingsSummary};
pub use emit::{emit_report, report_json, ReportFiles, ANALYSIS_FILE, HEAT_GRID_FILE, RESULTS_FILE};
pub use svg::{charts_for, heat_grid_svg, line_chart_svg};
