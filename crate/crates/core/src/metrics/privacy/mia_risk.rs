use rand::seq::index::sample;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::dataset::EvalContext;
use crate::error::Result;
use crate::metrics::common::{mean_and_error, Classifier};
use crate::metrics::{Measurement, MetricOutput, Outcome};
use crate::models::{class_prf, ModelKind, ModelSpec};
use crate::seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MiaRiskOptions {
    pub num_eval_iter: usize,
}

impl Default for MiaRiskOptions {
    fn default() -> Self {
        MiaRiskOptions { num_eval_iter: 5 }
    }
}

/// Share of the holdout used to train the attacker; the rest is scored.
const TRAIN_SHARE: f64 = 0.75;

fn draw(rng: &mut rand_chacha::ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut rows = sample(rng, n, k.min(n)).into_vec();
    rows.sort_unstable();
    rows
}

/// Membership inference by a random forest trained to separate synthetic
/// rows (members) from part of the holdout (non-members), then scored on the
/// remaining holdout rows mixed with an equal number of real training rows.
/// Reports macro F1 and the member-class precision and recall, averaged over
/// seeded iterations.
pub fn mia_risk(ctx: &EvalContext, opts: &MiaRiskOptions, seed: u64) -> Result<Outcome> {
    let Some(holdout) = ctx.holdout() else {
        return Ok(Outcome::disabled("no holdout table"));
    };
    let n_hold = holdout.n_rows();
    if n_hold < 4 {
        return Ok(Outcome::disabled("holdout needs at least four rows"));
    }
    if opts.num_eval_iter == 0 {
        return Ok(Outcome::disabled("num_eval_iter is 0"));
    }
    let (real, syn) = (ctx.real(), ctx.synthetic());
    let n_train_hold = ((n_hold as f64 * TRAIN_SHARE).round() as usize).clamp(1, n_hold - 1);

    let (mut f1s, mut precisions, mut recalls) = (Vec::new(), Vec::new(), Vec::new());
    for it in 0..opts.num_eval_iter {
        let iter_seed = seed::derive_index(seed, it as u64);
        let mut rng = seed::rng(iter_seed);
        let mut order: Vec<usize> = (0..n_hold).collect();
        order.shuffle(&mut rng);
        let (hold_train, hold_test) = order.split_at(n_train_hold);
        let mut hold_train = hold_train.to_vec();
        let mut hold_test = hold_test.to_vec();
        hold_train.sort_unstable();
        hold_test.sort_unstable();

        let syn_rows = draw(&mut rng, syn.n_rows(), hold_train.len());
        let real_rows = draw(&mut rng, real.n_rows(), hold_test.len());

        let train = syn
            .take_rows(&syn_rows)
            .concat(&holdout.take_rows(&hold_train))?;
        let y_train: Vec<u32> = (0..train.n_rows())
            .map(|i| u32::from(i < syn_rows.len()))
            .collect();
        let test = real
            .take_rows(&real_rows)
            .concat(&holdout.take_rows(&hold_test))?;
        let y_test: Vec<u32> = (0..test.n_rows())
            .map(|i| u32::from(i < real_rows.len()))
            .collect();

        let spec = ModelSpec::new(
            ModelKind::RandomForestClf,
            seed::derive_seed(iter_seed, "attacker"),
        );
        let model = Classifier::fit(&spec, &train.all_features(), &y_train, 2)?;
        let pred = model.predict(&test.all_features())?;
        let (p1, r1, f1) = class_prf(&y_test, &pred, 1);
        let (_, _, f0) = class_prf(&y_test, &pred, 0);
        f1s.push(0.5 * (f0 + f1));
        precisions.push(p1);
        recalls.push(r1);
    }
    let (f, fe) = mean_and_error(&f1s);
    let (p, pe) = mean_and_error(&precisions);
    let (r, re) = mean_and_error(&recalls);
    Ok(Measurement::new()
        .output(MetricOutput::lower("mia_macro_f1", f).with_error(fe))
        .output(MetricOutput::lower("mia_precision", p).with_error(pe))
        .output(MetricOutput::lower("mia_recall", r).with_error(re))
        .into())
}
