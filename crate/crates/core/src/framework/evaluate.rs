use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;

use crate::dataset::EvalContext;
use crate::error::{EvalError, Result};
use crate::metrics::{MetricResult, Outcome};
use crate::seed::derive_seed;

use super::config::EvalConfig;
use super::registry::{MetricDescriptor, Options, Registry};

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "metric panicked".to_string())
}

fn check_outputs(desc: &MetricDescriptor, outcome: &Outcome) -> Result<()> {
    let Outcome::Measured(m) = outcome else {
        return Ok(());
    };
    for out in &m.outputs {
        if !out.value.is_finite() || out.error.is_some_and(|e| !e.is_finite()) {
            return Err(EvalError::Model(format!(
                "output `{}` is not finite",
                out.name
            )));
        }
        if !desc.outputs().is_empty() {
            match desc.outputs().iter().find(|(n, _)| *n == out.name) {
                None => {
                    return Err(EvalError::Model(format!(
                        "undeclared output `{}`",
                        out.name
                    )))
                }
                Some((_, d)) if *d != out.direction => {
                    return Err(EvalError::Model(format!(
                        "output `{}` has direction {:?}, declared {:?}",
                        out.name, out.direction, d
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

fn run_one(ctx: &EvalContext, desc: &MetricDescriptor, options: &Options) -> MetricResult {
    let seed = derive_seed(ctx.seed(), desc.key());
    let run = catch_unwind(AssertUnwindSafe(|| desc.evaluate(ctx, options, seed)));
    let outcome = match run {
        Ok(Ok(outcome)) => outcome,
        Ok(Err(e)) => return MetricResult::failed(desc.key(), desc.category(), e),
        Err(panic) => {
            return MetricResult::failed(desc.key(), desc.category(), panic_message(panic))
        }
    };
    match check_outputs(desc, &outcome) {
        Ok(()) => MetricResult::from_outcome(desc.key(), desc.category(), outcome),
        Err(e) => MetricResult::failed(desc.key(), desc.category(), e),
    }
}

/// Runs every metric of `config` on `ctx`, in config order.
///
/// Metrics run in parallel; each gets the seed `derive_seed(ctx.seed(),
/// key)`, so results do not depend on scheduling. Unknown metrics or
/// options are rejected up front; a failing metric is recorded as failed
/// and the others still run.
pub fn evaluate(
    ctx: &EvalContext,
    config: &EvalConfig,
    registry: &Registry,
) -> Result<Vec<MetricResult>> {
    let resolved = config.resolved(registry)?;
    let jobs: Vec<(&MetricDescriptor, Options)> = resolved
        .metrics
        .keys()
        .map(|key| {
            (
                registry.get(key).expect("resolved keys exist"),
                resolved.overrides(key),
            )
        })
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(desc, opts)| run_one(ctx, desc, opts))
        .collect())
}
