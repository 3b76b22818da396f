use serde::{Deserialize, Serialize};

use crate::dataset::EvalContext;
use crate::error::Result;
use crate::metrics::common::mean_and_error;
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::stats::mean_ci;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CioOptions {
    /// Confidence level in percent.
    pub confidence: f64,
}

impl Default for CioOptions {
    fn default() -> Self {
        CioOptions { confidence: 95.0 }
    }
}

/// Symmetric overlap of two intervals: the mean of the shared length
/// relative to each interval's own width, floored at 0. A zero-width
/// interval counts as fully covered when its point lies inside the other.
pub fn interval_overlap(a: (f64, f64), b: (f64, f64)) -> f64 {
    let shared = a.1.min(b.1) - a.0.max(b.0);
    let part = |(lo, hi): (f64, f64), other: (f64, f64)| {
        let width = hi - lo;
        if width > 0.0 {
            shared / width
        } else if lo >= other.0 && lo <= other.1 {
            1.0
        } else {
            0.0
        }
    };
    (0.5 * (part(a, b) + part(b, a))).max(0.0)
}

/// Average overlap of real and synthetic confidence intervals for the mean
/// of each numerical column, with the count and fraction of columns whose
/// intervals do not overlap at all.
pub fn cio(ctx: &EvalContext, opts: &CioOptions) -> Result<Outcome> {
    let nums = ctx.real().numerical_indices();
    if nums.is_empty() {
        return Ok(Outcome::disabled("no numerical columns"));
    }
    if ctx.real().n_rows() < 2 || ctx.synthetic().n_rows() < 2 {
        return Ok(Outcome::disabled(
            "confidence intervals need at least two rows per table",
        ));
    }
    let mut overlaps = Vec::with_capacity(nums.len());
    let mut disjoint = 0usize;
    for &j in &nums {
        let r = mean_ci(
            ctx.real().column(j).as_numerical().unwrap_or_default(),
            opts.confidence,
        )?;
        let s = mean_ci(
            ctx.synthetic().column(j).as_numerical().unwrap_or_default(),
            opts.confidence,
        )?;
        if r.0.max(s.0) > r.1.min(s.1) {
            disjoint += 1;
        }
        overlaps.push(interval_overlap(r, s));
    }
    let (avg, err) = mean_and_error(&overlaps);
    Ok(Measurement::new()
        .output(MetricOutput::higher("avg_ci_overlap", avg).with_error(err))
        .output(MetricOutput::lower("n_non_overlaps", disjoint as f64))
        .output(MetricOutput::lower(
            "frac_non_overlaps",
            disjoint as f64 / nums.len() as f64,
        ))
        .into())
}
