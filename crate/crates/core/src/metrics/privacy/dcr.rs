use crate::dataset::EvalContext;
use crate::error::{EvalError, Result};
use crate::metrics::common::index_over;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::median;

/// Median synthetic-to-real nearest distance over the median real-to-real
/// nearest distance (the row itself excluded).
pub fn dcr(ctx: &EvalContext) -> Result<Outcome> {
    if ctx.real().n_rows() < 2 {
        return Ok(Outcome::disabled("needs at least two real rows"));
    }
    let index = index_over(ctx, ctx.real())?;
    let syn_med = median(&index.query(ctx.synthetic(), 1, false)?.nearest_distances());
    let real_med = median(&index.query(ctx.real(), 1, true)?.nearest_distances());
    if real_med <= 0.0 {
        return Err(EvalError::InsufficientData(
            "median real-to-real nearest distance is 0 (at least half the real rows are duplicated)".into(),
        ));
    }
    Ok(Measurement::new()
        .output(MetricOutput::higher("median_dcr", syn_med / real_med))
        .into())
}
