use serde::{Deserialize, Serialize};

use crate::dataset::EvalContext;
use crate::error::Result;
use crate::metrics::utility::adversarial_accuracy;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::seed::derive_seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NnaaLossOptions {
    pub n_resample: usize,
}

impl Default for NnaaLossOptions {
    fn default() -> Self {
        NnaaLossOptions { n_resample: 30 }
    }
}

/// `max(0, NNAA(holdout, synthetic) - NNAA(real, synthetic))`.
pub fn nnaa_privacy_loss(ctx: &EvalContext, opts: &NnaaLossOptions, seed: u64) -> Result<Outcome> {
    let Some(holdout) = ctx.holdout() else {
        return Ok(Outcome::disabled("no holdout table"));
    };
    if ctx.real().n_rows() < 2 || holdout.n_rows() < 2 || ctx.synthetic().n_rows() < 2 {
        return Ok(Outcome::disabled("needs at least two rows per table"));
    }
    let (train, _) =
        adversarial_accuracy(ctx, ctx.real(), opts.n_resample, derive_seed(seed, "real"))?;
    let (test, _) =
        adversarial_accuracy(ctx, holdout, opts.n_resample, derive_seed(seed, "holdout"))?;
    Ok(Measurement::new()
        .output(MetricOutput::lower(
            "nnaa_privacy_loss",
            (test - train).max(0.0),
        ))
        .output(MetricOutput::unranked("nnaa_real", train))
        .output(MetricOutput::unranked("nnaa_holdout", test))
        .into())
}
