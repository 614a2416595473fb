//! Grid sweeps over degradation configurations.

mod cost;
mod plan;
mod result;
mod runner;

pub use cost::{bytes_per_clip, cost_of, CostBreakdown};
pub use plan::{
    default_clip_lengths, PlanOverrides, SourceProfile, SweepPhase, SweepPlan, DEFAULT_BIT_DEPTHS,
    DEFAULT_SAMPLE_RATES_HZ,
};
pub use result::{
    load_results_csv, read_results_csv, save_results_csv, write_results_csv, ResultRow, SweepResult, Tradeoff,
    RESULTS_HEADER,
};
pub use runner::{featurize_config, nominal_duration, run_sweep, FeatureSet, SweepOptions};
