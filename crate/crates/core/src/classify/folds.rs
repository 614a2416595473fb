use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::scalar::Real;

/// Partitions sample indices into `k` folds with per-class counts that
/// differ by at most one between folds.
///
/// Class members are shuffled, then dealt round-robin; the dealing position
/// carries over from one class to the next so fold sizes also stay within
/// one of each other. Indices inside each fold are ascending.
pub fn stratified_folds<T: Real>(features: &[FeatureVector<T>], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    let labels: Vec<&str> = features.iter().map(FeatureVector::label).collect();
    stratified_folds_by_label(&labels, k, seed)
}

pub fn stratified_folds_by_label(labels: &[&str], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 folds, got {k}")));
    }
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    if let Some((label, members)) = by_class.iter().find(|(_, m)| m.len() < k) {
        return Err(Error::InsufficientClassSize {
            label: label.to_string(),
            count: members.len(),
            folds: k,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for members in by_class.values_mut() {
        members.shuffle(&mut rng);
        for &i in members.iter() {
            folds[next].push(i);
            next = (next + 1) % k;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn labels(classes: usize, per: usize) -> Vec<String> {
        (0..classes * per).map(|i| format!("c{}", i % classes)).collect()
    }

    #[test]
    fn hundred_samples_five_folds() {
        let owned = labels(5, 20);
        let l: Vec<&str> = owned.iter().map(String::as_str).collect();
        let folds = stratified_folds_by_label(&l, 5, 1).unwrap();
        assert_eq!(folds.len(), 5);
        for f in &folds {
            assert_eq!(f.len(), 20);
            for c in 0..5 {
                let name = format!("c{c}");
                assert_eq!(f.iter().filter(|&&i| l[i] == name).count(), 4);
            }
        }
        let all: HashSet<usize> = folds.iter().flatten().copied().collect();
        assert_eq!(all.len(), 100);
        assert_eq!(folds, stratified_folds_by_label(&l, 5, 1).unwrap());
        assert_ne!(folds, stratified_folds_by_label(&l, 5, 2).unwrap());
    }

    #[test]
    fn small_class_rejected() {
        let mut l = vec!["a"; 10];
        l.extend(["b"; 3]);
        assert!(matches!(
            stratified_folds_by_label(&l, 5, 0),
            Err(Error::InsufficientClassSize { count: 3, folds: 5, .. })
        ));
        assert!(stratified_folds_by_label(&l, 1, 0).is_err());
    }

    #[test]
    fn uneven_classes_balance_within_one() {
        let mut l = vec!["a"; 13];
        l.extend(["b"; 7]);
        l.extend(["c"; 9]);
        let folds = stratified_folds_by_label(&l, 4, 9).unwrap();
        for class in ["a", "b", "c"] {
            let counts: Vec<usize> = folds
                .iter()
                .map(|f| f.iter().filter(|&&i| l[i] == class).count())
                .collect();
            assert!(
                counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1,
                "{class}: {counts:?}"
            );
        }
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    }
}
