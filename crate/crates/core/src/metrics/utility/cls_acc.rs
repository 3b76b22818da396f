use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dataset::{EvalContext, FeatureMatrix, Table};
use crate::error::{EvalError, Result};
use crate::metrics::common::{all_but, mean_and_error, n_levels, Classifier};
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::models::{kfold, scores, ModelKind, ModelSpec};
use crate::seed::{derive_index, derive_seed};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClsAccOptions {
    /// `micro` or `macro`.
    #[serde(rename = "F1_type")]
    pub f1_type: String,
    pub k_folds: usize,
}

impl Default for ClsAccOptions {
    fn default() -> Self {
        ClsAccOptions {
            f1_type: "micro".into(),
            k_folds: 5,
        }
    }
}

const CLASSIFIERS: [(&str, ModelKind); 4] = [
    ("decision_tree", ModelKind::DecisionTree),
    ("adaboost", ModelKind::AdaBoost),
    ("random_forest", ModelKind::RandomForestClf),
    ("logistic_regression", ModelKind::LogReg),
];

fn f1(macro_avg: bool, y_true: &[u32], y_pred: &[u32]) -> Result<f64> {
    let s = scores(y_true, y_pred, None)?;
    Ok(if macro_avg { s.f1_macro } else { s.f1_micro })
}

struct Split<'a> {
    x: FeatureMatrix,
    y: &'a [u32],
}

/// F1 gap between classifiers trained on real and on synthetic data.
///
/// Train variant: stratified k-fold on both tables with one seed; in fold
/// `i` both models are scored on real test fold `i`. Test variant (with a
/// holdout): models trained on the full tables are scored on the holdout.
/// Each reported value averages the per-classifier absolute gaps, with the
/// standard error across the four classifiers.
pub fn cls_acc<'a>(ctx: &'a EvalContext, opts: &ClsAccOptions, seed: u64) -> Result<Outcome> {
    let macro_avg = match opts.f1_type.as_str() {
        "micro" => false,
        "macro" => true,
        other => {
            return Err(EvalError::Config(format!(
                "F1_type must be `micro` or `macro`, got `{other}`"
            )))
        }
    };
    let Some(t) = ctx.target_index() else {
        return Ok(Outcome::disabled("no target column"));
    };
    let features = all_but(ctx.real().n_cols(), Some(t));
    if features.is_empty() {
        return Ok(Outcome::disabled("no predictor columns besides the target"));
    }
    let k = n_levels(ctx, t);
    let split = |table: &'a Table| Split {
        x: table.to_features(&features),
        y: table.column(t).as_codes().unwrap_or_default(),
    };
    let (real, syn) = (split(ctx.real()), split(ctx.synthetic()));
    let min_rows = ctx.real().n_rows().min(ctx.synthetic().n_rows());
    if min_rows < opts.k_folds.max(2) {
        return Ok(Outcome::disabled(format!(
            "each table needs at least {} rows for {}-fold cross-validation",
            opts.k_folds.max(2),
            opts.k_folds
        )));
    }
    let fold_seed = derive_seed(seed, "folds");
    let real_plan = kfold(real.x.n_rows(), opts.k_folds, Some(real.y), fold_seed)?;
    let syn_plan = kfold(syn.x.n_rows(), opts.k_folds, Some(syn.y), fold_seed)?;

    let mut train_gaps = Vec::with_capacity(CLASSIFIERS.len());
    let mut test_gaps = Vec::with_capacity(CLASSIFIERS.len());
    let mut detail = Vec::with_capacity(CLASSIFIERS.len());
    for (name, kind) in CLASSIFIERS {
        let model_seed = derive_seed(seed, name);
        let mut gaps = Vec::with_capacity(opts.k_folds);
        for fold in 0..opts.k_folds {
            let spec = ModelSpec::new(kind, derive_index(model_seed, fold as u64));
            let fit_on = |s: &Split<'_>, rows: &[usize]| {
                let y: Vec<u32> = rows.iter().map(|&i| s.y[i]).collect();
                Classifier::fit(&spec, &s.x.take_rows(rows), &y, k)
            };
            let m_real = fit_on(&real, &real_plan.train(fold))?;
            let m_syn = fit_on(&syn, &syn_plan.train(fold))?;
            let test = real_plan.test(fold);
            let x_test = real.x.take_rows(test);
            let y_test: Vec<u32> = test.iter().map(|&i| real.y[i]).collect();
            let gap = f1(macro_avg, &y_test, &m_real.predict(&x_test)?)?
                - f1(macro_avg, &y_test, &m_syn.predict(&x_test)?)?;
            gaps.push(gap.abs());
        }
        let train_gap = crate::stats::mean(&gaps);
        train_gaps.push(train_gap);

        let mut entry = json!({ "classifier": name, "train_gap": train_gap });
        if let Some(holdout) = ctx.holdout() {
            let spec = ModelSpec::new(kind, model_seed);
            let x_hold = holdout.to_features(&features);
            let y_hold = holdout.column(t).as_codes().unwrap_or_default();
            let f_real = f1(
                macro_avg,
                y_hold,
                &Classifier::fit(&spec, &real.x, real.y, k)?.predict(&x_hold)?,
            )?;
            let f_syn = f1(
                macro_avg,
                y_hold,
                &Classifier::fit(&spec, &syn.x, syn.y, k)?.predict(&x_hold)?,
            )?;
            test_gaps.push((f_real - f_syn).abs());
            entry["test_f1_real"] = json!(f_real);
            entry["test_f1_synthetic"] = json!(f_syn);
        }
        detail.push(entry);
    }

    let (v, e) = mean_and_error(&train_gaps);
    let mut m = Measurement::new().output(MetricOutput::lower("diff_f1_train", v).with_error(e));
    if !test_gaps.is_empty() {
        let (v, e) = mean_and_error(&test_gaps);
        m = m.output(MetricOutput::lower("diff_f1_test", v).with_error(e));
    }
    Ok(m.payload("classifiers", json!(detail)).into())
}
