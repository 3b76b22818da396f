//! Slow, obviously-correct reference implementations used as test oracles.

use tabeval::distance::{euclidean_distance, gower_distance};
use tabeval::{DistanceKind, Table};

/// Range of every numerical column (0 for categoricals).
pub fn ranges_of(t: &Table) -> Vec<f64> {
    t.columns()
        .iter()
        .map(|c| match c.as_numerical() {
            Some(v) => {
                let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            }
            None => 0.0,
        })
        .collect()
}

/// All query-to-reference distances, stably sorted by (distance, index) and
/// cut to `k`. With `loo`, query row `i` skips reference row `i`.
pub fn brute_force_nn(
    query: &Table,
    reference: &Table,
    k: usize,
    loo: bool,
    kind: DistanceKind,
) -> Vec<Vec<(usize, f64)>> {
    let kinds = reference.kinds();
    let ranges = ranges_of(reference);
    let q = query.all_features();
    let r = reference.all_features();
    (0..q.n_rows())
        .map(|i| {
            let mut all: Vec<(usize, f64)> = (0..r.n_rows())
                .filter(|&j| !(loo && i == j))
                .map(|j| {
                    let d = match kind {
                        DistanceKind::Gower => gower_distance(q.row(i), r.row(j), &kinds, &ranges),
                        DistanceKind::Euclidean => {
                            euclidean_distance(q.row(i), r.row(j), &kinds, &ranges)
                        }
                    };
                    (j, d.unwrap())
                })
                .collect();
            all.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            all.truncate(k);
            all
        })
        .collect()
}

/// Two-sample KS statistic by evaluating both eCDFs at every sample point.
pub fn ecdf_sweep(x: &[f64], y: &[f64]) -> f64 {
    let cdf = |s: &[f64], t: f64| s.iter().filter(|&&v| v <= t).count() as f64 / s.len() as f64;
    x.iter()
        .chain(y)
        .map(|&t| (cdf(x, t) - cdf(y, t)).abs())
        .fold(0.0, f64::max)
}

/// KS distance of a sample of values in [0, 1] to the uniform distribution.
pub fn ks_to_uniform(mut p: Vec<f64>) -> f64 {
    p.sort_by(f64::total_cmp);
    let n = p.len() as f64;
    p.iter()
        .enumerate()
        .map(|(i, &v)| ((i + 1) as f64 / n - v).abs().max((v - i as f64 / n).abs()))
        .fold(0.0, f64::max)
}

/// AUROC as the share of (positive, negative) pairs ranked correctly, ties
/// counting one half.
pub fn pair_count_auroc(is_pos: &[bool], scores: &[f64]) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..scores.len() {
        for j in 0..scores.len() {
            if is_pos[i] && !is_pos[j] {
                den += 1.0;
                num += if scores[i] > scores[j] {
                    1.0
                } else if scores[i] == scores[j] {
                    0.5
                } else {
                    0.0
                };
            }
        }
    }
    num / den
}

/// Share of real rows with a synthetic row strictly closer (unweighted
/// Gower, real ranges) than every other real row.
pub fn unweighted_identifiability(real: &Table, syn: &Table) -> f64 {
    let ranges = ranges_of(real);
    let kinds = real.kinds();
    let (r, s) = (real.all_features(), syn.all_features());
    let d = |a: &[f64], b: &[f64]| gower_distance(a, b, &kinds, &ranges).unwrap();
    let risky = (0..r.n_rows())
        .filter(|&i| {
            let to_syn = (0..s.n_rows())
                .map(|j| d(r.row(i), s.row(j)))
                .fold(f64::INFINITY, f64::min);
            let to_real = (0..r.n_rows())
                .filter(|&j| j != i)
                .map(|j| d(r.row(i), r.row(j)))
                .fold(f64::INFINITY, f64::min);
            to_syn < to_real
        })
        .count();
    risky as f64 / r.n_rows() as f64
}
