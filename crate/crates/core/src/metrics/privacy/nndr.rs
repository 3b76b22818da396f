use crate::dataset::{EvalContext, Table};
use crate::error::{EvalError, Result};
use crate::metrics::common::{index_over, mean_and_error};
use crate::metrics::{Measurement, MetricOutput, Outcome};

/// Mean ratio of nearest to second-nearest `reference` distance over the
/// synthetic rows; rows whose second-nearest distance is 0 are skipped and
/// counted.
pub fn distance_ratio(ctx: &EvalContext, reference: &Table) -> Result<(f64, Option<f64>, usize)> {
    let nn = index_over(ctx, reference)?.query(ctx.synthetic(), 2, false)?;
    let mut ratios = Vec::with_capacity(nn.len());
    let mut skipped = 0;
    for row in nn.rows() {
        if row[1].distance > 0.0 {
            ratios.push(row[0].distance / row[1].distance);
        } else {
            skipped += 1;
        }
    }
    if ratios.is_empty() {
        return Err(EvalError::InsufficientData(
            "every synthetic row has two reference rows at distance 0".into(),
        ));
    }
    let (m, e) = mean_and_error(&ratios);
    Ok((m, e, skipped))
}

/// Nearest-neighbour distance ratio of synthetic rows against the real
/// table. With a holdout, also the privacy loss
/// `max(0, NNDR_holdout - NNDR_real)`.
pub fn nndr(ctx: &EvalContext) -> Result<Outcome> {
    if ctx.real().n_rows() < 2 {
        return Ok(Outcome::disabled("needs at least two real rows"));
    }
    let (v, e, skipped) = distance_ratio(ctx, ctx.real())?;
    let mut m = Measurement::new().output(MetricOutput::higher("mean_nndr", v).with_error(e));
    if skipped > 0 {
        m = m.note(format!(
            "{skipped} synthetic rows skipped: second-nearest real distance is 0"
        ));
    }
    if let Some(holdout) = ctx.holdout() {
        if holdout.n_rows() >= 2 {
            let (h, _, _) = distance_ratio(ctx, holdout)?;
            m = m.output(MetricOutput::lower("nndr_privacy_loss", (h - v).max(0.0)));
        } else {
            m = m.note("holdout has fewer than two rows; no privacy loss");
        }
    }
    Ok(m.into())
}
