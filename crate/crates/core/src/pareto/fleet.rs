use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A purchasable sensor type with its expected per-unit accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorCatalogEntry {
    pub name: String,
    pub unit_cost: f64,
    pub accuracy: f64,
    #[serde(default)]
    pub lifetime_cost_per_year: f64,
}

impl SensorCatalogEntry {
    /// Purchase price plus running cost over the horizon.
    pub fn cost_over(&self, horizon_years: f64) -> f64 {
        self.unit_cost + horizon_years * self.lifetime_cost_per_year
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidPlan(format!("sensor {:?}: {what}", self.name)));
        if !(self.unit_cost > 0.0) || !self.unit_cost.is_finite() {
            return bad("unit_cost must be positive");
        }
        if !(0.0..=1.0).contains(&self.accuracy) {
            return bad("accuracy must be in [0, 1]");
        }
        if !(self.lifetime_cost_per_year >= 0.0) || !self.lifetime_cost_per_year.is_finite() {
            return bad("lifetime_cost_per_year must be non-negative");
        }
        Ok(())
    }
}

/// A homogeneous deployment: some number of one sensor type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FleetPlan {
    pub sensor: String,
    pub units: u64,
    /// Cost of one unit over the horizon.
    pub cost_per_unit: f64,
    pub total_cost: f64,
    pub per_unit_accuracy: f64,
    pub budget: f64,
    pub horizon_years: f64,
    pub min_accuracy: f64,
    /// No catalog entry reaches `min_accuracy`; the most accurate one is used.
    pub below_target: bool,
    /// The budget does not cover a single unit.
    pub unaffordable: bool,
}

/// Units affordable at `cost_per_unit`. The quotient is nudged up by a
/// relative 1e-12 so that exact ratios such as 0.3 / 0.1 are not floored one
/// short; the nudge is monotone, so more budget never buys fewer units.
fn affordable(budget: f64, cost_per_unit: f64) -> u64 {
    let q = budget / cost_per_unit;
    (q * (1.0 + 1e-12)).floor() as u64
}

/// Chooses the sensor type that maximizes the number of units the budget
/// covers among those meeting `min_accuracy`. Ties go to higher accuracy,
/// then to lower cost per unit, then to catalog order. When no entry meets
/// the target, plans at most one unit of the most accurate entry and sets
/// `below_target`.
pub fn plan_fleet(
    budget: f64,
    horizon_years: f64,
    catalog: &[SensorCatalogEntry],
    min_accuracy: f64,
) -> Result<FleetPlan> {
    if !(budget > 0.0) || !budget.is_finite() {
        return Err(Error::InvalidBudget(budget));
    }
    if !(horizon_years >= 0.0) || !horizon_years.is_finite() {
        return Err(Error::InvalidPlan(format!(
            "horizon must be non-negative, got {horizon_years}"
        )));
    }
    if !min_accuracy.is_finite() {
        return Err(Error::InvalidPlan(format!(
            "min_accuracy must be finite, got {min_accuracy}"
        )));
    }
    if catalog.is_empty() {
        return Err(Error::InvalidPlan("sensor catalog is empty".into()));
    }
    for e in catalog {
        e.validate()?;
    }
    let units_of = |e: &SensorCatalogEntry| affordable(budget, e.cost_over(horizon_years));
    let qualifying: Vec<&SensorCatalogEntry> = catalog.iter().filter(|e| e.accuracy >= min_accuracy).collect();
    let (entry, units, below_target) = if qualifying.is_empty() {
        let best = catalog
            .iter()
            .reduce(|a, b| if b.accuracy > a.accuracy { b } else { a })
            .expect("catalog is non-empty");
        (best, units_of(best).min(1), true)
    } else {
        let best = qualifying
            .into_iter()
            .reduce(|a, b| {
                let (ua, ub) = (units_of(a), units_of(b));
                let b_wins = ub > ua
                    || (ub == ua && b.accuracy > a.accuracy)
                    || (ub == ua
                        && b.accuracy == a.accuracy
                        && b.cost_over(horizon_years) < a.cost_over(horizon_years));
                if b_wins {
                    b
                } else {
                    a
                }
            })
            .expect("qualifying is non-empty");
        (best, units_of(best), false)
    };
    let cost_per_unit = entry.cost_over(horizon_years);
    Ok(FleetPlan {
        sensor: entry.name.clone(),
        units,
        cost_per_unit,
        total_cost: units as f64 * cost_per_unit,
        per_unit_accuracy: entry.accuracy,
        budget,
        horizon_years,
        min_accuracy,
        below_target,
        unaffordable: units == 0,
    })
}
