//! SAMME AdaBoost over decision stumps, and bagged random forests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dataset::FeatureMatrix;
use crate::seed;

use super::tree::{argmax, DecisionTree, TreeParams, TreeTarget};

#[derive(Clone, Debug)]
pub struct AdaBoost {
    stumps: Vec<(DecisionTree, f64)>,
    n_classes: usize,
}

impl AdaBoost {
    pub fn fit(x: &FeatureMatrix, labels: &[u32], n_classes: usize, n_stumps: usize) -> AdaBoost {
        let n = x.n_rows();
        let k = n_classes as f64;
        let mut w = vec![1.0 / n as f64; n];
        let mut stumps = Vec::with_capacity(n_stumps);
        let params = TreeParams {
            max_depth: 1,
            min_samples_leaf: 1,
            max_features: None,
        };
        for _ in 0..n_stumps.max(1) {
            let stump = DecisionTree::fit_rows::<ChaCha8Rng>(
                x,
                TreeTarget::Classes { labels, n_classes },
                Some(&w),
                (0..n).collect(),
                params,
                None,
            );
            let pred = stump.predict(x);
            let miss: Vec<bool> = pred
                .iter()
                .zip(labels)
                .map(|(p, &y)| *p as u32 != y)
                .collect();
            let total: f64 = w.iter().sum();
            let err: f64 = w
                .iter()
                .zip(&miss)
                .filter(|(_, &m)| m)
                .map(|(wi, _)| wi)
                .sum::<f64>()
                / total;
            if err <= 0.0 {
                stumps.push((stump, 1.0));
                break;
            }
            if err >= 1.0 - 1.0 / k {
                if stumps.is_empty() {
                    stumps.push((stump, 1.0));
                }
                break;
            }
            let alpha = ((1.0 - err) / err).ln() + (k - 1.0).ln();
            for (wi, &m) in w.iter_mut().zip(&miss) {
                if m {
                    *wi *= alpha.exp();
                }
            }
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|wi| *wi /= total);
            stumps.push((stump, alpha));
        }
        AdaBoost { stumps, n_classes }
    }

    pub fn n_stumps(&self) -> usize {
        self.stumps.len()
    }

    /// Normalised weighted votes per class.
    pub fn predict_proba(&self, x: &FeatureMatrix) -> Vec<Vec<f64>> {
        let mut votes = vec![vec![0.0; self.n_classes]; x.n_rows()];
        for (stump, alpha) in &self.stumps {
            for (row, p) in votes.iter_mut().zip(stump.predict(x)) {
                row[p as usize] += alpha;
            }
        }
        let total: f64 = self.stumps.iter().map(|(_, a)| a).sum();
        for row in &mut votes {
            row.iter_mut().for_each(|v| *v /= total);
        }
        votes
    }

    pub fn predict(&self, x: &FeatureMatrix) -> Vec<f64> {
        self.predict_proba(x)
            .iter()
            .map(|p| argmax(p) as f64)
            .collect()
    }
}

/// Bootstrap-aggregated trees with per-split feature subsampling.
#[derive(Clone, Debug)]
pub struct RandomForest {
    trees: Vec<DecisionTree>,
    n_classes: usize,
}

impl RandomForest {
    fn fit_with<'a, F>(
        x: &FeatureMatrix,
        n_trees: usize,
        params: TreeParams,
        seed: u64,
        n_classes: usize,
        make_target: F,
    ) -> RandomForest
    where
        F: Fn() -> TreeTarget<'a> + Sync,
    {
        let n = x.n_rows();
        let trees = (0..n_trees.max(1))
            .into_par_iter()
            .map(|t| {
                let mut rng = seed::rng(seed::derive_index(seed, t as u64));
                let rows: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
                DecisionTree::fit_rows(x, make_target(), None, rows, params, Some(&mut rng))
            })
            .collect();
        RandomForest { trees, n_classes }
    }

    pub fn fit_classifier(
        x: &FeatureMatrix,
        labels: &[u32],
        n_classes: usize,
        n_trees: usize,
        params: TreeParams,
        seed: u64,
    ) -> RandomForest {
        Self::fit_with(x, n_trees, params, seed, n_classes, || {
            TreeTarget::Classes { labels, n_classes }
        })
    }

    pub fn fit_regressor(
        x: &FeatureMatrix,
        y: &[f64],
        n_trees: usize,
        params: TreeParams,
        seed: u64,
    ) -> RandomForest {
        Self::fit_with(x, n_trees, params, seed, 0, || TreeTarget::Values(y))
    }

    pub fn is_classifier(&self) -> bool {
        self.n_classes > 0
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    /// Mean of the trees' leaf class probabilities.
    pub fn predict_proba(&self, x: &FeatureMatrix) -> Vec<Vec<f64>> {
        let mut acc = vec![vec![0.0; self.n_classes]; x.n_rows()];
        for tree in &self.trees {
            for (row, p) in acc.iter_mut().zip(tree.predict_proba(x)) {
                for (a, b) in row.iter_mut().zip(p) {
                    *a += b;
                }
            }
        }
        let m = self.trees.len() as f64;
        for row in &mut acc {
            row.iter_mut().for_each(|v| *v /= m);
        }
        acc
    }

    pub fn predict(&self, x: &FeatureMatrix) -> Vec<f64> {
        if self.is_classifier() {
            return self
                .predict_proba(x)
                .iter()
                .map(|p| argmax(p) as f64)
                .collect();
        }
        let mut acc = vec![0.0; x.n_rows()];
        for tree in &self.trees {
            for (a, p) in acc.iter_mut().zip(tree.predict(x)) {
                *a += p;
            }
        }
        let m = self.trees.len() as f64;
        acc.iter().map(|v| v / m).collect()
    }
}
