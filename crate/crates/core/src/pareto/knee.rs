use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One point of a cost/accuracy curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint<T = f64> {
    pub cost: T,
    pub accuracy: T,
}

impl<T: Real> CurvePoint<T> {
    pub fn new(cost: T, accuracy: T) -> Self {
        Self { cost, accuracy }
    }
}

/// Knee detection method identifier.
pub const KNEE_METHOD: &str = "normalized_chord_distance";
/// Minimum normalized chord distance for a knee to be reported.
pub const DEFAULT_KNEE_THRESHOLD: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KneeReport<T = f64> {
    pub knee: Option<CurvePoint<T>>,
    /// Index into the input curve of the reported knee.
    pub knee_index: Option<usize>,
    /// Largest normalized distance from an interior point to the chord.
    pub knee_strength: T,
    /// Index achieving `knee_strength`, reported even when below threshold.
    pub candidate_index: Option<usize>,
    pub method: String,
    pub threshold: T,
}

pub fn knee<T: Real>(points: &[CurvePoint<T>]) -> Result<KneeReport<T>> {
    knee_with_threshold(points, T::of(DEFAULT_KNEE_THRESHOLD))
}

/// Finds the interior point farthest from the chord joining the first and
/// last points after min-max normalizing both axes to `[0, 1]`.
///
/// Costs must be finite and strictly increasing. Distances within a relative
/// `1e-9` of the maximum count as ties and resolve toward lower cost. A flat
/// accuracy axis has no knee.
pub fn knee_with_threshold<T: Real>(points: &[CurvePoint<T>], threshold: T) -> Result<KneeReport<T>> {
    if points.len() < 3 {
        return Err(Error::InsufficientPoints(points.len()));
    }
    if points.iter().any(|p| !p.cost.is_finite() || !p.accuracy.is_finite()) {
        return Err(Error::InvalidCurve("curve contains non-finite values".into()));
    }
    if let Some(w) = points.windows(2).find(|w| !(w[1].cost > w[0].cost)) {
        return Err(Error::InvalidCurve(format!(
            "costs must strictly increase, got {} then {}",
            w[0].cost.to_f64_lossy(),
            w[1].cost.to_f64_lossy()
        )));
    }
    let first = points[0];
    let last = points[points.len() - 1];
    let (amin, amax) = points.iter().fold((first.accuracy, first.accuracy), |(lo, hi), p| {
        (lo.min(p.accuracy), hi.max(p.accuracy))
    });
    let mut best: Option<(usize, T)> = None;
    if amax > amin {
        let cspan = last.cost - first.cost;
        let aspan = amax - amin;
        let y = |p: &CurvePoint<T>| (p.accuracy - amin) / aspan;
        let (y0, y1) = (y(&first), y(&last));
        let dy = y1 - y0;
        let norm = (dy * dy + T::one()).sqrt();
        for (i, p) in points.iter().enumerate().take(points.len() - 1).skip(1) {
            let x = (p.cost - first.cost) / cspan;
            let d = (dy * x - (y(p) - y0)).abs() / norm;
            let better = match best {
                None => true,
                Some((_, b)) => d > b + T::of(1e-9) * b.max(T::one()),
            };
            if better {
                best = Some((i, d));
            }
        }
    }
    let (candidate_index, knee_strength) = match best {
        Some((i, d)) => (Some(i), d),
        None => (None, T::zero()),
    };
    let knee_index = candidate_index.filter(|_| knee_strength >= threshold);
    Ok(KneeReport {
        knee: knee_index.map(|i| points[i]),
        knee_index,
        knee_strength,
        candidate_index,
        method: KNEE_METHOD.to_string(),
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(pts: &[(f64, f64)]) -> Vec<CurvePoint> {
        pts.iter().map(|&(c, a)| CurvePoint::new(c, a)).collect()
    }

    /// Distance from each interior point to the first-last chord, computed
    /// with the two-point line formula on independently normalized values.
    fn brute_force(pts: &[(f64, f64)]) -> (usize, f64) {
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let (xmin, xmax) = (xs[0], xs[xs.len() - 1]);
        let ymin = ys.iter().cloned().fold(f64::INFINITY, f64::min);
        let ymax = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let nx: Vec<f64> = xs.iter().map(|x| (x - xmin) / (xmax - xmin)).collect();
        let ny: Vec<f64> = ys.iter().map(|y| (y - ymin) / (ymax - ymin)).collect();
        let n = pts.len() - 1;
        let (x1, y1, x2, y2) = (nx[0], ny[0], nx[n], ny[n]);
        (1..n)
            .map(|i| {
                let num = ((y2 - y1) * nx[i] - (x2 - x1) * ny[i] + x2 * y1 - y2 * x1).abs();
                (i, num / ((y2 - y1).powi(2) + (x2 - x1).powi(2)).sqrt())
            })
            .fold((0, -1.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc })
    }

    const REFERENCE: [(f64, f64); 5] = [(1.0, 0.2), (2.0, 0.8), (3.0, 0.9), (4.0, 0.92), (5.0, 0.93)];

    #[test]
    fn reference_curve_knee() {
        let r = knee(&curve(&REFERENCE)).unwrap();
        assert_eq!(r.knee_index, Some(1));
        assert_eq!(r.knee.unwrap().cost, 2.0);
        // x = 0.25, y = 0.6 / 0.73, chord y = x
        let expected = (0.6 / 0.73 - 0.25) / 2f64.sqrt();
        assert!((r.knee_strength - expected).abs() < 1e-12);
        assert!((r.knee_strength - 0.40).abs() < 0.01);
        let (bi, bd) = brute_force(&REFERENCE);
        assert_eq!(bi, 1);
        assert!((bd - r.knee_strength).abs() < 1e-12);
        assert_eq!(r.method, KNEE_METHOD);
    }

    #[test]
    fn linear_curve_has_no_knee() {
        let r = knee(&curve(&[(1.0, 0.1), (2.0, 0.2), (3.0, 0.3), (4.0, 0.4)])).unwrap();
        assert!(r.knee.is_none());
        assert!(r.knee_strength < 1e-12);
    }

    #[test]
    fn near_linear_curve_has_no_knee() {
        // bit-depth style curve with a mild wobble
        let r = knee(&curve(&[
            (4.0, 0.40),
            (8.0, 0.52),
            (10.0, 0.57),
            (12.0, 0.63),
            (16.0, 0.74),
        ]))
        .unwrap();
        assert!(r.knee.is_none(), "strength {}", r.knee_strength);
        assert!(r.knee_strength > 0.0);
        assert!(r.candidate_index.is_some());
    }

    #[test]
    fn flat_curve_has_no_knee() {
        let r = knee(&curve(&[(1.0, 0.5), (2.0, 0.5), (3.0, 0.5)])).unwrap();
        assert!(r.knee.is_none());
        assert_eq!(r.knee_strength, 0.0);
    }

    #[test]
    fn ties_resolve_to_lower_cost() {
        // symmetric bump: points 1 and 3 are equally far from the chord
        let r = knee(&curve(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.5), (3.0, 1.0), (4.0, 0.0)])).unwrap();
        assert_eq!(r.knee_index, Some(1));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            knee(&curve(&REFERENCE[..2])),
            Err(Error::InsufficientPoints(2))
        ));
        assert!(matches!(
            knee(&curve(&[(1.0, 0.2), (3.0, 0.8), (2.0, 0.9)])),
            Err(Error::InvalidCurve(_))
        ));
        assert!(matches!(
            knee(&curve(&[(1.0, 0.2), (1.0, 0.8), (2.0, 0.9)])),
            Err(Error::InvalidCurve(_))
        ));
    }

    #[test]
    fn f32_agrees() {
        let pts: Vec<CurvePoint<f32>> = REFERENCE
            .iter()
            .map(|&(c, a)| CurvePoint::new(c as f32, a as f32))
            .collect();
        let r = knee(&pts).unwrap();
        assert_eq!(r.knee_index, Some(1));
        assert!((f64::from(r.knee_strength) - 0.4043).abs() < 1e-3);
    }

    fn random_curve() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.01f64..10.0, 0.0f64..1.0), 3..30).prop_map(|v| {
            let mut cost = 0.0;
            v.into_iter()
                .map(|(step, acc)| {
                    cost += step;
                    (cost, acc)
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(pts in random_curve()) {
            let r = knee_with_threshold(&curve(&pts), 0.0).unwrap();
            let (_, bd) = brute_force(&pts);
            prop_assert!((r.knee_strength - bd).abs() < 1e-9);
        }

        #[test]
        fn affine_invariant(pts in random_curve(), a in 0.01f64..100.0, b in 0.0f64..1000.0, on_cost in any::<bool>()) {
            let base = knee(&curve(&pts)).unwrap();
            let scaled: Vec<(f64, f64)> = pts
                .iter()
                .map(|&(c, y)| if on_cost { (a * c + b, y) } else { (c, a * y + b) })
                .collect();
            let r = knee(&curve(&scaled)).unwrap();
            prop_assert_eq!(r.candidate_index, base.candidate_index);
            prop_assert!((r.knee_strength - base.knee_strength).abs() < 1e-9);
        }
    }
}
