use serde_json::json;

use crate::dataset::EvalContext;
use crate::error::Result;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::PcaModel;

/// Projection of real and synthetic numerical columns onto the top two
/// principal components of the real data. Produces plot data only.
pub fn pca(ctx: &EvalContext) -> Result<Outcome> {
    let nums = ctx.real().numerical_indices();
    if nums.len() < 2 {
        return Ok(Outcome::disabled("needs at least two numerical columns"));
    }
    if ctx.real().n_rows() < 2 {
        return Ok(Outcome::disabled("needs at least two real rows"));
    }
    let real = ctx.real().select(&nums)?;
    let syn = ctx.synthetic().select(&nums)?;
    let model = PcaModel::fit(&real)?;
    let ratio = model.explained_variance_ratio();
    Ok(Measurement::new()
        .output(MetricOutput::unranked("explained_variance_pc1", ratio[0]))
        .output(MetricOutput::unranked("explained_variance_pc2", ratio[1]))
        .payload(
            "projection",
            json!({
                "real": model.project(&real)?,
                "synthetic": model.project(&syn)?,
                "explained_variance_ratio": ratio,
            }),
        )
        .into())
}
