use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dataset::EvalContext;
use crate::error::Result;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::{frobenius_diff, mixed_correlation_matrix, MatrixSummary};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorrDiffOptions {
    /// Include categorical columns via Cramer's V and the correlation ratio;
    /// otherwise only numerical columns (Pearson) are used.
    pub mixed_corr: bool,
}

impl Default for CorrDiffOptions {
    fn default() -> Self {
        CorrDiffOptions { mixed_corr: true }
    }
}

pub(crate) fn matrix_payload(
    real: &MatrixSummary,
    syn: &MatrixSummary,
    diff: &MatrixSummary,
) -> serde_json::Value {
    json!({
        "columns": real.names(),
        "real": real.rows(),
        "synthetic": syn.rows(),
        "difference": diff.rows(),
    })
}

/// Frobenius norm of the difference between the real and synthetic
/// association matrices.
pub fn corr_diff(ctx: &EvalContext, opts: &CorrDiffOptions) -> Result<Outcome> {
    let cols: Vec<usize> = if opts.mixed_corr {
        (0..ctx.real().n_cols()).collect()
    } else {
        ctx.real().numerical_indices()
    };
    if cols.len() < 2 {
        return Ok(Outcome::disabled(if opts.mixed_corr {
            "needs at least two columns"
        } else {
            "needs at least two numerical columns"
        }));
    }
    if ctx.real().n_rows() < 2 || ctx.synthetic().n_rows() < 2 {
        return Ok(Outcome::disabled(
            "correlations need at least two rows per table",
        ));
    }
    let real = mixed_correlation_matrix(&ctx.real().select(&cols)?)?;
    let syn = mixed_correlation_matrix(&ctx.synthetic().select(&cols)?)?;
    let diff = real.difference(&syn)?;
    Ok(Measurement::new()
        .output(MetricOutput::lower(
            "corr_mat_diff",
            frobenius_diff(&real, &syn)?,
        ))
        .payload("matrices", matrix_payload(&real, &syn, &diff))
        .into())
}
