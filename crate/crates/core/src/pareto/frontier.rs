use std::cmp::Ordering;

use crate::sweep::Tradeoff;

/// Tie order among results with identical cost and accuracy: lowest bit
/// depth, then lowest sample rate, then shortest clip.
pub(crate) fn duplicate_order<R: Tradeoff>(a: &R, b: &R) -> Ordering {
    let (ca, cb) = (a.config(), b.config());
    ca.bit_depth
        .cmp(&cb.bit_depth)
        .then(ca.sample_rate_hz.cmp(&cb.sample_rate_hz))
        .then(a.clip_length_s().total_cmp(&b.clip_length_s()))
}

/// Results not dominated in (lower bytes per clip, higher accuracy), sorted
/// by ascending bytes. Exact (bytes, accuracy) duplicates collapse to one
/// entry chosen by [`duplicate_order`].
pub fn pareto_frontier<R: Tradeoff + Clone>(results: &[R]) -> Vec<R> {
    let mut order: Vec<&R> = results.iter().collect();
    order.sort_by(|a, b| {
        a.bytes_per_clip()
            .cmp(&b.bytes_per_clip())
            .then(b.accuracy().total_cmp(&a.accuracy()))
            .then_with(|| duplicate_order(*a, *b))
    });
    let mut frontier: Vec<R> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for r in order {
        if r.accuracy() > best {
            best = r.accuracy();
            frontier.push(r.clone());
        }
    }
    frontier
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::degrade::{ClipLength, DegradationConfig};
    use crate::sweep::ResultRow;
    use proptest::prelude::*;

    pub(crate) fn row(rate: u32, bits: u32, bytes: u64, acc: f64) -> ResultRow {
        ResultRow {
            config: DegradationConfig::new(rate, bits, ClipLength::Seconds(1.0)),
            mean_accuracy: acc,
            fold_accuracies: vec![acc],
            bytes_per_clip: bytes,
            relative_cost: bytes as f64 / 1_000_000.0,
            wall_time_s: 0.0,
        }
    }

    /// Quadratic dominance filter followed by duplicate collapsing.
    pub(crate) fn oracle(rows: &[ResultRow]) -> Vec<ResultRow> {
        let dominated = |p: &ResultRow| {
            rows.iter().any(|q| {
                q.bytes_per_clip <= p.bytes_per_clip
                    && q.mean_accuracy >= p.mean_accuracy
                    && (q.bytes_per_clip < p.bytes_per_clip || q.mean_accuracy > p.mean_accuracy)
            })
        };
        let mut kept: Vec<ResultRow> = Vec::new();
        for p in rows.iter().filter(|p| !dominated(p)) {
            match kept
                .iter_mut()
                .find(|k| k.bytes_per_clip == p.bytes_per_clip && k.mean_accuracy == p.mean_accuracy)
            {
                Some(k) => {
                    if duplicate_order(p, k) == Ordering::Less {
                        *k = p.clone();
                    }
                }
                None => kept.push(p.clone()),
            }
        }
        kept.sort_by_key(|r| r.bytes_per_clip);
        kept
    }

    #[test]
    fn small_example() {
        let rows = vec![row(1, 1, 1, 0.5), row(2, 1, 2, 0.9), row(3, 1, 3, 0.85)];
        let f = pareto_frontier(&rows);
        assert_eq!(f, vec![rows[0].clone(), rows[1].clone()]);
        assert_eq!(f, oracle(&rows));
    }

    #[test]
    fn single_point() {
        let rows = vec![row(8_000, 8, 100, 0.7)];
        assert_eq!(pareto_frontier(&rows), rows);
    }

    #[test]
    fn duplicates_keep_lowest_depth_then_rate() {
        let rows = vec![
            row(8_000, 16, 16_000, 0.9),
            row(16_000, 8, 16_000, 0.9),
            row(4_000, 8, 16_000, 0.9),
        ];
        let f = pareto_frontier(&rows);
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].config.sample_rate_hz, f[0].config.bit_depth), (4_000, 8));
    }

    pub(crate) fn random_rows(max_len: usize) -> impl Strategy<Value = Vec<ResultRow>> {
        // coarse grids force plenty of cost and accuracy ties
        prop::collection::vec((1u64..40, 0u32..20, 1u32..6, 1u32..17), 1..max_len).prop_map(|v| {
            v.into_iter()
                .map(|(bytes, acc, rate, bits)| row(rate * 1000, bits, bytes, f64::from(acc) / 20.0))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn equals_dominance_oracle(rows in random_rows(200)) {
            prop_assert_eq!(pareto_frontier(&rows), oracle(&rows));
        }

        #[test]
        fn frontier_is_strictly_monotone(rows in random_rows(200)) {
            let f = pareto_frontier(&rows);
            for w in f.windows(2) {
                prop_assert!(w[0].bytes_per_clip < w[1].bytes_per_clip);
                prop_assert!(w[0].mean_accuracy < w[1].mean_accuracy);
            }
        }
    }

    #[test]
    fn large_random_set_matches_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let rows: Vec<ResultRow> = (0..10_000)
            .map(|_| {
                row(
                    rng.random_range(1..=48) * 1000,
                    rng.random_range(1..=16),
                    rng.random_range(1..5_000),
                    f64::from(rng.random_range(0..1000u32)) / 1000.0,
                )
            })
            .collect();
        assert_eq!(pareto_frontier(&rows), oracle(&rows));
    }
}
