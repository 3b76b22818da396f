use crate::dataset::{ColumnData, EvalContext};
use crate::error::Result;
use crate::metrics::common::{mean_and_error, n_levels};
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::{discretize_pair, hellinger, ProbabilityVector};

/// Average discrete Hellinger distance over all columns; numerical columns
/// are binned with Scott's rule on the pooled values.
pub fn h_dist(ctx: &EvalContext) -> Result<Outcome> {
    let (real, syn) = (ctx.real(), ctx.synthetic());
    let mut dists = Vec::with_capacity(real.n_cols());
    for (j, (rc, sc)) in real.columns().iter().zip(syn.columns()).enumerate() {
        let (p, q) = match (rc.data(), sc.data()) {
            (ColumnData::Numerical(r), ColumnData::Numerical(s)) => {
                let (cr, cs, k) = discretize_pair(r, s);
                (
                    ProbabilityVector::from_codes(&cr, k)?,
                    ProbabilityVector::from_codes(&cs, k)?,
                )
            }
            _ => {
                let k = n_levels(ctx, j);
                (
                    ProbabilityVector::from_codes(rc.as_codes().unwrap_or_default(), k)?,
                    ProbabilityVector::from_codes(sc.as_codes().unwrap_or_default(), k)?,
                )
            }
        };
        dists.push(hellinger(&p, &q)?);
    }
    let (avg, err) = mean_and_error(&dists);
    Ok(Measurement::new()
        .output(MetricOutput::lower("avg_hellinger", avg).with_error(err))
        .into())
}
