use serde::{Deserialize, Serialize};

use crate::dataset::{normalize, EvalContext, NormalizationSpec};
use crate::error::Result;
use crate::metrics::common::{mean_and_error, Classifier};
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::models::{kfold, Hyperparameters, ModelKind, ModelSpec};
use crate::seed::derive_index;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PMseOptions {
    pub k_folds: usize,
    /// Gradient-descent iteration cap of the logistic regression.
    pub max_iter: usize,
}

impl Default for PMseOptions {
    fn default() -> Self {
        PMseOptions {
            k_folds: 5,
            max_iter: 5000,
        }
    }
}

/// Propensity mean squared error: a logistic regression learns to tell
/// synthetic rows (label 1) from real rows (label 0) under stratified
/// k-fold cross-validation, and the held-out propensities are compared with
/// the synthetic share `c` as `mean((p - c)^2)`. Also reports the
/// discriminator's held-out accuracy.
pub fn p_mse(ctx: &EvalContext, opts: &PMseOptions, seed: u64) -> Result<Outcome> {
    let (real, syn) = (ctx.real(), ctx.synthetic());
    let n = real.n_rows() + syn.n_rows();
    if n < opts.k_folds || real.n_rows() < opts.k_folds.max(2) || syn.n_rows() < opts.k_folds.max(2)
    {
        return Ok(Outcome::disabled(format!(
            "each table needs at least {} rows for {}-fold cross-validation",
            opts.k_folds.max(2),
            opts.k_folds
        )));
    }
    let spec = NormalizationSpec::fit_pooled(real, &[syn])?;
    let pooled = normalize(&real.concat(syn)?, &spec)?;
    let x = pooled.all_features();
    let labels: Vec<u32> = (0..n).map(|i| u32::from(i >= real.n_rows())).collect();
    let c = syn.n_rows() as f64 / n as f64;

    let plan = kfold(n, opts.k_folds, Some(&labels), seed)?;
    let hp = Hyperparameters {
        max_iter: opts.max_iter,
        ..Hyperparameters::default()
    };
    let mut pmse = Vec::with_capacity(plan.k());
    let mut acc = Vec::with_capacity(plan.k());
    for fold in 0..plan.k() {
        let train = plan.train(fold);
        let test = plan.test(fold);
        let y_train: Vec<u32> = train.iter().map(|&i| labels[i]).collect();
        let spec = ModelSpec::new(ModelKind::LogReg, derive_index(seed, fold as u64))
            .with_hyperparameters(hp.clone());
        let model = Classifier::fit(&spec, &x.take_rows(&train), &y_train, 2)?;
        let x_test = x.take_rows(test);
        let prob = model.proba_of(&x_test, 1);
        let pred = model.predict(&x_test)?;
        let sq: f64 = prob.iter().map(|p| (p - c) * (p - c)).sum();
        pmse.push(sq / test.len() as f64);
        let hits = test
            .iter()
            .zip(&pred)
            .filter(|(&i, &p)| labels[i] == p)
            .count();
        acc.push(hits as f64 / test.len() as f64);
    }
    let (v, e) = mean_and_error(&pmse);
    let (a, ae) = mean_and_error(&acc);
    Ok(Measurement::new()
        .output(MetricOutput::lower("pmse", v).with_error(e))
        .output(MetricOutput::lower("pmse_acc", a).with_error(ae))
        .into())
}
