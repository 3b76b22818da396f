use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dataset::{ColumnKind, EvalContext};
use crate::error::Result;
use crate::metrics::common::{all_but, mean_and_error, n_levels, Classifier, DEFAULT_THRESHOLD};
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::models::{self, scores, ModelKind, ModelSpec, Target};
use crate::seed::derive_seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AttDisclOptions {
    /// Hit tolerance on min-max normalised numerical targets.
    pub thres_percent: f64,
}

impl Default for AttDisclOptions {
    fn default() -> Self {
        AttDisclOptions {
            thres_percent: DEFAULT_THRESHOLD,
        }
    }
}

/// Attribute disclosure risk. Each column in turn is predicted from all the
/// others by a random forest trained on the synthetic table and scored on
/// the real table. Categorical targets give macro precision, recall and F1;
/// numerical targets (normalised by the real range) give the hit rate
/// `mean(|y - y_hat| <= tau)`, used for all three. Columns are averaged.
pub fn att_discl(ctx: &EvalContext, opts: &AttDisclOptions, seed: u64) -> Result<Outcome> {
    let n_cols = ctx.real().n_cols();
    if n_cols < 2 {
        return Ok(Outcome::disabled("needs at least two columns"));
    }
    let (real, syn) = (ctx.real(), ctx.synthetic());
    let (mut precisions, mut recalls, mut f1s) = (Vec::new(), Vec::new(), Vec::new());
    let mut detail = Vec::with_capacity(n_cols);
    for j in 0..n_cols {
        let predictors = all_but(n_cols, Some(j));
        let x_syn = syn.to_features(&predictors);
        let x_real = real.to_features(&predictors);
        let name = real.column(j).name();
        let col_seed = derive_seed(seed, name);
        let (p, r, f) = match real.column(j).kind() {
            ColumnKind::Categorical => {
                let spec = ModelSpec::new(ModelKind::RandomForestClf, col_seed);
                let y_syn = syn.column(j).as_codes().unwrap_or_default();
                let model = Classifier::fit(&spec, &x_syn, y_syn, n_levels(ctx, j))?;
                let y_real = real.column(j).as_codes().unwrap_or_default();
                let s = scores(y_real, &model.predict(&x_real)?, None)?;
                (s.precision_macro, s.recall_macro, s.f1_macro)
            }
            ColumnKind::Numerical => {
                let spec = ModelSpec::new(ModelKind::RandomForestReg, col_seed);
                let y_syn = ctx
                    .synthetic_norm()
                    .column(j)
                    .as_numerical()
                    .unwrap_or_default();
                let model = models::fit(&spec, &x_syn, Target::Values(y_syn))?;
                let y_real = ctx.real_norm().column(j).as_numerical().unwrap_or_default();
                let pred = model.predict(&x_real);
                let hits = y_real
                    .iter()
                    .zip(&pred)
                    .filter(|(y, p)| (*y - *p).abs() <= opts.thres_percent)
                    .count();
                let acc = hits as f64 / y_real.len().max(1) as f64;
                (acc, acc, acc)
            }
        };
        detail.push(json!({ "column": name, "precision": p, "recall": r, "f1": f }));
        precisions.push(p);
        recalls.push(r);
        f1s.push(f);
    }
    let (f, fe) = mean_and_error(&f1s);
    let (p, pe) = mean_and_error(&precisions);
    let (r, re) = mean_and_error(&recalls);
    Ok(Measurement::new()
        .output(MetricOutput::lower("adr_macro_f1", f).with_error(fe))
        .output(MetricOutput::lower("adr_precision", p).with_error(pe))
        .output(MetricOutput::lower("adr_recall", r).with_error(re))
        .payload("columns", json!(detail))
        .into())
}
