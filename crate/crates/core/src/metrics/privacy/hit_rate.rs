use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{ColumnKind, EvalContext};
use crate::error::Result;
use crate::metrics::common::DEFAULT_THRESHOLD;
use crate::metrics::{Measurement, MetricOutput, Outcome};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HitRateOptions {
    /// Numerical tolerance as a fraction of the real range.
    pub thres_percent: f64,
}

impl Default for HitRateOptions {
    fn default() -> Self {
        HitRateOptions {
            thres_percent: DEFAULT_THRESHOLD,
        }
    }
}

/// Relative slack absorbing round-off in `threshold * range`, so a gap of
/// exactly the threshold counts as a match.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Fraction of real rows matched by at least one synthetic row: equal on
/// every categorical column and within `thres_percent * range` on every
/// numerical column.
pub fn hit_rate(ctx: &EvalContext, opts: &HitRateOptions) -> Result<Outcome> {
    let kinds = ctx.kinds();
    let tol: Vec<f64> = ctx
        .ranges()
        .iter()
        .map(|r| r * opts.thres_percent * (1.0 + BOUNDARY_SLACK))
        .collect();
    let real = ctx.real().all_features();
    let syn = ctx.synthetic().all_features();
    let matches = |a: &[f64], b: &[f64]| {
        kinds.iter().enumerate().all(|(j, kind)| match kind {
            ColumnKind::Categorical => a[j] == b[j],
            ColumnKind::Numerical => (a[j] - b[j]).abs() <= tol[j],
        })
    };
    let hits = (0..real.n_rows())
        .into_par_iter()
        .filter(|&i| syn.rows().any(|s| matches(real.row(i), s)))
        .count();
    Ok(Measurement::new()
        .output(MetricOutput::lower(
            "hit_rate",
            hits as f64 / real.n_rows() as f64,
        ))
        .into())
}
