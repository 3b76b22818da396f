use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::dataset::{EvalContext, Table};
use crate::distance::DistanceIndex;
use crate::error::Result;
use crate::metrics::common::{index_over, mean_and_error};
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NnaaOptions {
    /// Equal-size batches drawn when the synthetic table is more than twice
    /// the size of the reference table.
    pub n_resample: usize,
}

impl Default for NnaaOptions {
    fn default() -> Self {
        NnaaOptions { n_resample: 30 }
    }
}

fn indicator_mean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).filter(|(x, y)| x > y).count() as f64 / a.len().max(1) as f64
}

fn accuracy_once(
    ctx: &EvalContext,
    reference: &Table,
    ref_self: &[f64],
    ref_index: &DistanceIndex,
    syn: &Table,
) -> Result<f64> {
    let syn_index = index_over(ctx, syn)?;
    let d_rs = syn_index.query(reference, 1, false)?.nearest_distances();
    let d_ss = syn_index.query(syn, 1, true)?.nearest_distances();
    let d_sr = ref_index.query(syn, 1, false)?.nearest_distances();
    Ok(0.5 * (indicator_mean(&d_rs, ref_self) + indicator_mean(&d_sr, &d_ss)))
}

/// Nearest-neighbour adversarial accuracy of `reference` against the
/// context's synthetic table, with its standard error across resamples.
///
/// `0.5 * [mean 1(d_RS > d_RR) + mean 1(d_SR > d_SS)]`, where within-set
/// distances leave the row itself out.
pub fn adversarial_accuracy(
    ctx: &EvalContext,
    reference: &Table,
    n_resample: usize,
    seed: u64,
) -> Result<(f64, Option<f64>)> {
    let syn = ctx.synthetic();
    let ref_index = index_over(ctx, reference)?;
    let ref_self = ref_index.query(reference, 1, true)?.nearest_distances();
    if syn.n_rows() <= 2 * reference.n_rows() || n_resample == 0 {
        return Ok((
            accuracy_once(ctx, reference, &ref_self, &ref_index, syn)?,
            None,
        ));
    }
    let mut values = Vec::with_capacity(n_resample);
    for r in 0..n_resample {
        let mut rng = seed::rng(seed::derive_index(seed, r as u64));
        let mut rows = sample(&mut rng, syn.n_rows(), reference.n_rows()).into_vec();
        rows.sort_unstable();
        values.push(accuracy_once(
            ctx,
            reference,
            &ref_self,
            &ref_index,
            &syn.take_rows(&rows),
        )?);
    }
    Ok(mean_and_error(&values))
}

/// Nearest-neighbour adversarial accuracy between the real and synthetic
/// tables.
pub fn nnaa(ctx: &EvalContext, opts: &NnaaOptions, seed: u64) -> Result<Outcome> {
    if ctx.real().n_rows() < 2 || ctx.synthetic().n_rows() < 2 {
        return Ok(Outcome::disabled("needs at least two rows per table"));
    }
    let (v, e) = adversarial_accuracy(ctx, ctx.real(), opts.n_resample, seed)?;
    Ok(Measurement::new()
        .output(MetricOutput::lower("nnaa", v).with_error(e))
        .into())
}
