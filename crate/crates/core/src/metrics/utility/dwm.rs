use serde_json::json;

use crate::dataset::EvalContext;
use crate::error::Result;
use crate::metrics::common::mean_and_error;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::{mean, mean_ci};

/// Columns at or above this count switch the plot from per-attribute
/// intervals to a mean-versus-mean scatter.
const SCATTER_FROM: usize = 10;

/// Average absolute difference of min-max normalised column means.
pub fn dwm(ctx: &EvalContext) -> Result<Outcome> {
    let nums = ctx.real().numerical_indices();
    if nums.is_empty() {
        return Ok(Outcome::disabled("no numerical columns"));
    }
    let (real, syn) = (ctx.real_norm(), ctx.synthetic_norm());
    let mut diffs = Vec::with_capacity(nums.len());
    let mut points = Vec::with_capacity(nums.len());
    for &j in &nums {
        let r = real.column(j).as_numerical().unwrap_or_default();
        let s = syn.column(j).as_numerical().unwrap_or_default();
        let (mr, ms) = (mean(r), mean(s));
        diffs.push((mr - ms).abs());
        points.push(json!({
            "column": real.column(j).name(),
            "real_mean": mr,
            "synthetic_mean": ms,
            "real_ci": mean_ci(r, 95.0).ok(),
            "synthetic_ci": mean_ci(s, 95.0).ok(),
        }));
    }
    let (avg, err) = mean_and_error(&diffs);
    let style = if nums.len() < SCATTER_FROM {
        "intervals"
    } else {
        "scatter"
    };
    Ok(Measurement::new()
        .output(MetricOutput::lower("avg_dwm_diff", avg).with_error(err))
        .payload("means", json!({ "style": style, "columns": points }))
        .into())
}
