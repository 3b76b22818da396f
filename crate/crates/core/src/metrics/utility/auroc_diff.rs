use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dataset::EvalContext;
use crate::error::Result;
use crate::metrics::common::{all_but, n_levels, Classifier};
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::models::{auroc, roc_curve, ModelKind, ModelSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AurocDiffOptions {
    /// One of `log_reg`, `dt`, `ada`, `rf`.
    pub model: String,
}

impl Default for AurocDiffOptions {
    fn default() -> Self {
        AurocDiffOptions {
            model: "log_reg".into(),
        }
    }
}

/// Absolute difference between the holdout AUROC of a model trained on
/// real data and one trained on synthetic data. Needs a two-level target
/// and a holdout table.
pub fn auroc_diff(ctx: &EvalContext, opts: &AurocDiffOptions, seed: u64) -> Result<Outcome> {
    let kind = ModelKind::from_option(&opts.model)?;
    let Some(t) = ctx.target_index() else {
        return Ok(Outcome::disabled("no target column"));
    };
    let Some(holdout) = ctx.holdout() else {
        return Ok(Outcome::disabled("no holdout table"));
    };
    if n_levels(ctx, t) != 2 {
        return Ok(Outcome::disabled("target does not have exactly two levels"));
    }
    if !kind.is_classifier() {
        return Ok(Outcome::disabled("model is not a classifier"));
    }
    let features = all_but(ctx.real().n_cols(), Some(t));
    if features.is_empty() {
        return Ok(Outcome::disabled("no predictor columns besides the target"));
    }
    let y_hold = holdout.column(t).as_codes().unwrap_or_default();
    let positive: Vec<bool> = y_hold.iter().map(|&y| y == 1).collect();
    let x_hold = holdout.to_features(&features);
    let spec = ModelSpec::new(kind, seed);

    let mut aucs = Vec::with_capacity(2);
    let mut curves = Vec::with_capacity(2);
    for table in [ctx.real(), ctx.synthetic()] {
        let y = table.column(t).as_codes().unwrap_or_default();
        let model = Classifier::fit(&spec, &table.to_features(&features), y, 2)?;
        let scores = model.proba_of(&x_hold, 1);
        let Some(a) = auroc(&positive, &scores) else {
            return Ok(Outcome::disabled("holdout target holds a single class"));
        };
        aucs.push(a);
        curves.push(roc_curve(&positive, &scores));
    }
    Ok(Measurement::new()
        .output(MetricOutput::lower("auroc_diff", (aucs[0] - aucs[1]).abs()))
        .output(MetricOutput::unranked("auroc_real", aucs[0]))
        .output(MetricOutput::unranked("auroc_synthetic", aucs[1]))
        .payload("roc", json!({ "real": curves[0], "synthetic": curves[1] }))
        .into())
}
