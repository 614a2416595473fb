//! Decisions over sweep results: knees, the Pareto frontier, the minimum
//! viable configuration and the fixed-budget fleet planner.

mod fleet;
mod frontier;
mod knee;
mod mvd;

pub use fleet::{plan_fleet, FleetPlan, SensorCatalogEntry};
pub use frontier::pareto_frontier;
pub use knee::{knee, knee_with_threshold, CurvePoint, KneeReport, DEFAULT_KNEE_THRESHOLD, KNEE_METHOD};
pub use mvd::{select_mvd, MvdSelection, DEFAULT_THETA};
