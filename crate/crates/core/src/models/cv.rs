use rand::seq::SliceRandom;

use crate::error::{EvalError, Result};
use crate::seed;

/// A k-fold partition of row ids.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldPlan {
    k: usize,
    folds: Vec<Vec<usize>>,
    seed: u64,
}

impl FoldPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Held-out rows of fold `i`, ascending.
    pub fn test(&self, i: usize) -> &[usize] {
        &self.folds[i]
    }

    /// Training rows of fold `i`, ascending.
    pub fn train(&self, i: usize) -> Vec<usize> {
        let mut rows: Vec<usize> = self
            .folds
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .flat_map(|(_, f)| f.iter().copied())
            .collect();
        rows.sort_unstable();
        rows
    }
}

/// Shuffled k-fold split, stratified when labels are given: rows are
/// shuffled within each class, classes are laid end to end and position `p`
/// goes to fold `p mod k`. Fold sizes differ by at most one overall and per
/// class.
pub fn kfold(n_rows: usize, k: usize, labels: Option<&[u32]>, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(EvalError::InvalidInput("k-fold needs k >= 2".into()));
    }
    if k > n_rows {
        return Err(EvalError::InsufficientData(format!(
            "{k} folds requested for {n_rows} rows"
        )));
    }
    let mut rng = seed::rng(seed);
    let order: Vec<usize> = match labels {
        Some(labels) => {
            if labels.len() != n_rows {
                return Err(EvalError::InvalidInput(
                    "label count differs from row count".into(),
                ));
            }
            let n_classes = labels.iter().max().map_or(0, |&m| m as usize + 1);
            let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
            for (i, &y) in labels.iter().enumerate() {
                by_class[y as usize].push(i);
            }
            by_class
                .into_iter()
                .flat_map(|mut rows| {
                    rows.shuffle(&mut rng);
                    rows
                })
                .collect()
        }
        None => {
            let mut rows: Vec<usize> = (0..n_rows).collect();
            rows.shuffle(&mut rng);
            rows
        }
    };
    let mut folds = vec![Vec::new(); k];
    for (p, row) in order.into_iter().enumerate() {
        folds[p % k].push(row);
    }
    folds.iter_mut().for_each(|f| f.sort_unstable());
    Ok(FoldPlan { k, folds, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_folds() {
        let plan = kfold(10, 5, None, 1).unwrap();
        for i in 0..5 {
            assert_eq!(plan.test(i).len(), 2);
            assert_eq!(plan.train(i).len(), 8);
        }
        let mut all: Vec<usize> = (0..5).flat_map(|i| plan.test(i).to_vec()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn stratification_spreads_minority() {
        let labels = [0, 0, 0, 0, 0, 0, 0, 0, 1, 1];
        let plan = kfold(10, 2, Some(&labels), 9).unwrap();
        for i in 0..2 {
            assert_eq!(plan.test(i).iter().filter(|&&r| labels[r] == 1).count(), 1);
        }
    }

    #[test]
    fn deterministic_and_validated() {
        assert_eq!(
            kfold(17, 3, None, 4).unwrap(),
            kfold(17, 3, None, 4).unwrap()
        );
        assert!(kfold(3, 4, None, 0).is_err());
        assert!(kfold(3, 1, None, 0).is_err());
    }
}
