use crate::dataset::{ColumnData, EvalContext};
use crate::error::Result;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::{discretize_pair, frobenius_diff, nmi_matrix};

use super::corr_diff::matrix_payload;

/// Frobenius norm of the difference between the pairwise normalised
/// mutual information matrices. Numerical columns share Scott bins fitted
/// on the pooled real and synthetic values.
pub fn mi_diff(ctx: &EvalContext) -> Result<Outcome> {
    let (real, syn) = (ctx.real(), ctx.synthetic());
    if real.n_cols() < 2 {
        return Ok(Outcome::disabled("needs at least two columns"));
    }
    let mut real_codes = Vec::with_capacity(real.n_cols());
    let mut syn_codes = Vec::with_capacity(real.n_cols());
    for (rc, sc) in real.columns().iter().zip(syn.columns()) {
        match (rc.data(), sc.data()) {
            (ColumnData::Numerical(r), ColumnData::Numerical(s)) => {
                let (cr, cs, _) = discretize_pair(r, s);
                real_codes.push(cr);
                syn_codes.push(cs);
            }
            _ => {
                real_codes.push(rc.as_codes().unwrap_or_default().to_vec());
                syn_codes.push(sc.as_codes().unwrap_or_default().to_vec());
            }
        }
    }
    let names: Vec<String> = real.names().into_iter().map(str::to_string).collect();
    let mr = nmi_matrix(names.clone(), &real_codes)?;
    let ms = nmi_matrix(names, &syn_codes)?;
    let diff = mr.difference(&ms)?;
    Ok(Measurement::new()
        .output(MetricOutput::lower(
            "mi_mat_diff",
            frobenius_diff(&mr, &ms)?,
        ))
        .payload("matrices", matrix_payload(&mr, &ms, &diff))
        .into())
}
