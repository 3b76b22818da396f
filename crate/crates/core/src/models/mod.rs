//! Small in-house learners used by the model-based metrics.
//!
//! Categorical features enter as integer level codes. Every learner is
//! deterministic given its seed.

mod cv;
mod ensemble;
mod logreg;
mod scores;
mod tree;

use serde::{Deserialize, Serialize};

use crate::dataset::FeatureMatrix;
use crate::error::{EvalError, Result};

pub use cv::{kfold, FoldPlan};
pub use ensemble::{AdaBoost, RandomForest};
pub use logreg::{log_loss_and_gradient, LogisticRegression};
pub use scores::{auroc, class_prf, roc_curve, scores, ClassificationScores};
pub use tree::{DecisionTree, TreeParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    LogReg,
    DecisionTree,
    AdaBoost,
    RandomForestClf,
    RandomForestReg,
}

impl ModelKind {
    pub fn is_classifier(self) -> bool {
        !matches!(self, ModelKind::RandomForestReg)
    }

    /// Parses the short option names used in metric configs.
    pub fn from_option(name: &str) -> Result<Self> {
        match name {
            "log_reg" | "logreg" => Ok(ModelKind::LogReg),
            "dt" | "decision_tree" => Ok(ModelKind::DecisionTree),
            "ada" | "adaboost" => Ok(ModelKind::AdaBoost),
            "rf" | "rf_cls" | "random_forest" => Ok(ModelKind::RandomForestClf),
            "rf_reg" => Ok(ModelKind::RandomForestReg),
            other => Err(EvalError::Config(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    pub max_iter: usize,
    pub learning_rate: f64,
    /// L2 strength on the mean log-loss; `None` uses `1 / n`.
    pub l2: Option<f64>,
    /// Gradient max-norm at which gradient descent stops early.
    pub tol: f64,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub n_trees: usize,
    pub n_stumps: usize,
    /// Features tried per forest split; `None` uses `floor(sqrt(d))`.
    pub max_features: Option<usize>,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            max_iter: 5000,
            learning_rate: 0.1,
            l2: None,
            tol: 1e-4,
            max_depth: 8,
            min_samples_leaf: 2,
            n_trees: 100,
            n_stumps: 50,
            max_features: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub hyperparameters: Hyperparameters,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, seed: u64) -> Self {
        ModelSpec {
            kind,
            hyperparameters: Hyperparameters::default(),
            seed,
        }
    }

    pub fn with_hyperparameters(mut self, hp: Hyperparameters) -> Self {
        self.hyperparameters = hp;
        self
    }

    fn tree_params(&self, n_features: usize, subsample: bool) -> TreeParams {
        let hp = &self.hyperparameters;
        TreeParams {
            max_depth: hp.max_depth,
            min_samples_leaf: hp.min_samples_leaf,
            max_features: subsample.then(|| {
                hp.max_features
                    .unwrap_or(((n_features as f64).sqrt().floor() as usize).max(1))
            }),
        }
    }
}

/// Training target: class codes `0..n_classes` or real values.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Classes { labels: &'a [u32], n_classes: usize },
    Values(&'a [f64]),
}

#[derive(Clone, Debug)]
pub enum FittedModel {
    LogReg(LogisticRegression),
    Tree(DecisionTree),
    AdaBoost(AdaBoost),
    Forest(RandomForest),
}

/// Fits the learner named by `spec`.
pub fn fit(spec: &ModelSpec, x: &FeatureMatrix, target: Target<'_>) -> Result<FittedModel> {
    if x.n_rows() == 0 {
        return Err(EvalError::InsufficientData(
            "cannot fit a model on zero rows".into(),
        ));
    }
    match (spec.kind, target) {
        (ModelKind::RandomForestReg, Target::Values(y)) => {
            check_len(x, y.len())?;
            Ok(FittedModel::Forest(RandomForest::fit_regressor(
                x,
                y,
                spec.hyperparameters.n_trees,
                spec.tree_params(x.n_cols(), true),
                spec.seed,
            )))
        }
        (ModelKind::RandomForestReg, Target::Classes { .. }) => Err(EvalError::Model(
            "random forest regressor needs real-valued targets".into(),
        )),
        (_, Target::Values(_)) => Err(EvalError::Model(format!(
            "{:?} needs class labels",
            spec.kind
        ))),
        (kind, Target::Classes { labels, n_classes }) => {
            check_len(x, labels.len())?;
            if let Some(bad) = labels.iter().find(|&&y| y as usize >= n_classes) {
                return Err(EvalError::Model(format!(
                    "label {bad} outside {n_classes} classes"
                )));
            }
            let first = labels[0];
            if labels.iter().all(|&y| y == first) {
                return Err(EvalError::Model(
                    "training labels contain a single class".into(),
                ));
            }
            let hp = &spec.hyperparameters;
            Ok(match kind {
                ModelKind::LogReg => {
                    FittedModel::LogReg(LogisticRegression::fit(x, labels, n_classes, hp)?)
                }
                ModelKind::DecisionTree => {
                    FittedModel::Tree(DecisionTree::fit_rows::<rand_chacha::ChaCha8Rng>(
                        x,
                        tree::TreeTarget::Classes { labels, n_classes },
                        None,
                        (0..x.n_rows()).collect(),
                        spec.tree_params(x.n_cols(), false),
                        None,
                    ))
                }
                ModelKind::AdaBoost => {
                    FittedModel::AdaBoost(AdaBoost::fit(x, labels, n_classes, hp.n_stumps))
                }
                ModelKind::RandomForestClf => FittedModel::Forest(RandomForest::fit_classifier(
                    x,
                    labels,
                    n_classes,
                    hp.n_trees,
                    spec.tree_params(x.n_cols(), true),
                    spec.seed,
                )),
                ModelKind::RandomForestReg => unreachable!("handled above"),
            })
        }
    }
}

fn check_len(x: &FeatureMatrix, n: usize) -> Result<()> {
    if x.n_rows() != n {
        return Err(EvalError::InvalidInput(format!(
            "{} feature rows but {n} targets",
            x.n_rows()
        )));
    }
    Ok(())
}

impl FittedModel {
    pub fn is_classifier(&self) -> bool {
        match self {
            FittedModel::Forest(f) => f.is_classifier(),
            FittedModel::Tree(t) => t.is_classifier(),
            _ => true,
        }
    }

    /// Predicted values (regressors) or class codes as `f64` (classifiers).
    pub fn predict(&self, x: &FeatureMatrix) -> Vec<f64> {
        match self {
            FittedModel::LogReg(m) => m
                .predict_proba(x)
                .iter()
                .map(|p| tree::argmax(p) as f64)
                .collect(),
            FittedModel::Tree(m) => m.predict(x),
            FittedModel::AdaBoost(m) => m.predict(x),
            FittedModel::Forest(m) => m.predict(x),
        }
    }

    pub fn predict_classes(&self, x: &FeatureMatrix) -> Result<Vec<u32>> {
        if !self.is_classifier() {
            return Err(EvalError::Model(
                "regressor has no class predictions".into(),
            ));
        }
        Ok(self.predict(x).iter().map(|&v| v as u32).collect())
    }

    /// Class probabilities per row; `None` for regressors.
    pub fn predict_proba(&self, x: &FeatureMatrix) -> Option<Vec<Vec<f64>>> {
        match self {
            FittedModel::LogReg(m) => Some(m.predict_proba(x)),
            FittedModel::Tree(m) if m.is_classifier() => Some(m.predict_proba(x)),
            FittedModel::AdaBoost(m) => Some(m.predict_proba(x)),
            FittedModel::Forest(m) if m.is_classifier() => Some(m.predict_proba(x)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs() -> (FeatureMatrix, Vec<u32>) {
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..40 {
            let t = f64::from(i % 10) * 0.1;
            if i < 20 {
                rows.push(vec![-2.0 + t, -1.0 - t]);
                y.push(0);
            } else {
                rows.push(vec![2.0 - t, 1.0 + t]);
                y.push(1);
            }
        }
        (FeatureMatrix::from_rows(&rows).unwrap(), y)
    }

    fn accuracy(model: &FittedModel, x: &FeatureMatrix, y: &[u32]) -> f64 {
        let p = model.predict_classes(x).unwrap();
        p.iter().zip(y).filter(|(a, b)| a == b).count() as f64 / y.len() as f64
    }

    #[test]
    fn every_classifier_separates_blobs() {
        let (x, y) = blobs();
        for kind in [
            ModelKind::LogReg,
            ModelKind::DecisionTree,
            ModelKind::AdaBoost,
            ModelKind::RandomForestClf,
        ] {
            let m = fit(
                &ModelSpec::new(kind, 3),
                &x,
                Target::Classes {
                    labels: &y,
                    n_classes: 2,
                },
            )
            .unwrap();
            assert_eq!(accuracy(&m, &x, &y), 1.0, "{kind:?}");
            let p = m.predict_proba(&x).unwrap();
            assert!(p.iter().all(|r| (r.iter().sum::<f64>() - 1.0).abs() < 1e-9));
        }
    }

    #[test]
    fn tree_learns_label_copy_feature() {
        let x = FeatureMatrix::from_rows(
            &(0..30)
                .map(|i| vec![f64::from(i % 3), f64::from(i)])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let y: Vec<u32> = (0..30).map(|i| (i % 3) as u32).collect();
        let m = fit(
            &ModelSpec::new(ModelKind::DecisionTree, 0),
            &x,
            Target::Classes {
                labels: &y,
                n_classes: 3,
            },
        )
        .unwrap();
        assert_eq!(accuracy(&m, &x, &y), 1.0);
    }

    #[test]
    fn forest_regressor_on_constant_target() {
        let x = FeatureMatrix::from_rows(&(0..20).map(|i| vec![f64::from(i)]).collect::<Vec<_>>())
            .unwrap();
        let y = vec![4.5; 20];
        let m = fit(
            &ModelSpec::new(ModelKind::RandomForestReg, 1),
            &x,
            Target::Values(&y),
        )
        .unwrap();
        assert!(m.predict(&x).iter().all(|&v| v == 4.5));
        assert!(m.predict_proba(&x).is_none());
        assert!(m.predict_classes(&x).is_err());
    }

    #[test]
    fn single_class_is_rejected() {
        let x = FeatureMatrix::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        let err = fit(
            &ModelSpec::new(ModelKind::LogReg, 0),
            &x,
            Target::Classes {
                labels: &[1, 1],
                n_classes: 2,
            },
        );
        assert!(matches!(err, Err(EvalError::Model(_))));
    }

    #[test]
    fn seeded_forests_are_reproducible() {
        let (x, y) = blobs();
        let spec = ModelSpec::new(ModelKind::RandomForestClf, 42);
        let a = fit(
            &spec,
            &x,
            Target::Classes {
                labels: &y,
                n_classes: 2,
            },
        )
        .unwrap();
        let b = fit(
            &spec,
            &x,
            Target::Classes {
                labels: &y,
                n_classes: 2,
            },
        )
        .unwrap();
        assert_eq!(a.predict_proba(&x), b.predict_proba(&x));
    }
}
