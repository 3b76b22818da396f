use crate::dataset::{ColumnData, EvalContext, Table};
use crate::distance::DistanceIndex;
use crate::error::Result;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::{discretize, entropy};

/// Inverse-entropy column weights on `table` (numerical columns binned by
/// Scott's rule), scaled to sum to the column count. Zero-entropy columns
/// get weight 0; equal weights are returned as exactly 1.
pub fn entropy_weights(table: &Table) -> Vec<f64> {
    let n = table.n_cols();
    let inv: Vec<f64> = table
        .columns()
        .iter()
        .map(|c| {
            let h = match c.data() {
                ColumnData::Numerical(v) => entropy(&discretize(v).0),
                ColumnData::Categorical { codes, .. } => entropy(codes),
            };
            if h > 1e-12 {
                1.0 / h
            } else {
                0.0
            }
        })
        .collect();
    let total: f64 = inv.iter().sum();
    if total <= 0.0 {
        return vec![1.0; n];
    }
    let first = inv[0];
    if inv
        .iter()
        .all(|&w| (w - first).abs() <= 1e-12 * first.abs())
    {
        return vec![1.0; n];
    }
    inv.iter().map(|w| w * n as f64 / total).collect()
}

/// Fraction of real rows whose entropy-weighted distance to the nearest
/// synthetic row is strictly smaller than to the nearest other real row.
pub fn eps_risk(ctx: &EvalContext) -> Result<Outcome> {
    let real = ctx.real();
    if real.n_rows() < 2 {
        return Ok(Outcome::disabled("needs at least two real rows"));
    }
    let weights = entropy_weights(real);
    let ranges = ctx.ranges();
    let real_index =
        DistanceIndex::new(real, &ranges, ctx.distance())?.with_weights(weights.clone())?;
    let syn_index =
        DistanceIndex::new(ctx.synthetic(), &ranges, ctx.distance())?.with_weights(weights)?;
    let d_rr = real_index.query(real, 1, true)?.nearest_distances();
    let d_rs = syn_index.query(real, 1, false)?.nearest_distances();
    let risky = d_rs.iter().zip(&d_rr).filter(|(s, r)| s < r).count();
    Ok(Measurement::new()
        .output(MetricOutput::lower(
            "eps_identif_risk",
            risky as f64 / real.n_rows() as f64,
        ))
        .into())
}
