use rand::seq::SliceRandom;

use crate::error::{EvalError, Result};
use crate::seed;

/// Permutation-test p-value `(1 + #{T_perm >= T_obs}) / (n_perms + 1)`.
///
/// Each permutation reshuffles the pooled sample and splits it back into
/// groups of the original sizes.
pub fn permutation_pvalue<T, F>(
    x: &[T],
    y: &[T],
    statistic: F,
    n_perms: usize,
    seed: u64,
) -> Result<f64>
where
    T: Clone,
    F: Fn(&[T], &[T]) -> f64,
{
    if x.is_empty() || y.is_empty() {
        return Err(EvalError::InsufficientData(
            "permutation test needs two non-empty samples".into(),
        ));
    }
    if n_perms == 0 {
        return Err(EvalError::InvalidInput("n_perms must be at least 1".into()));
    }
    let observed = statistic(x, y);
    let tol = 1e-12 * observed.abs().max(1.0);
    let mut pool: Vec<T> = x.iter().chain(y).cloned().collect();
    let mut rng = seed::rng(seed);
    let mut extreme = 0usize;
    for _ in 0..n_perms {
        pool.shuffle(&mut rng);
        let (a, b) = pool.split_at(x.len());
        if statistic(a, b) >= observed - tol {
            extreme += 1;
        }
    }
    Ok((1 + extreme) as f64 / (n_perms + 1) as f64)
}

/// Permutation p-value of the TVD between two categorical code samples.
pub fn tvd_permutation_pvalue(
    x: &[u32],
    y: &[u32],
    n_levels: usize,
    n_perms: usize,
    seed: u64,
) -> Result<f64> {
    if let Some(bad) = x.iter().chain(y).find(|&&c| c as usize >= n_levels) {
        return Err(EvalError::InvalidInput(format!(
            "code {bad} outside {n_levels} levels"
        )));
    }
    let stat = |a: &[u32], b: &[u32]| {
        let mut diff = vec![0.0f64; n_levels];
        let (wa, wb) = (1.0 / a.len() as f64, 1.0 / b.len() as f64);
        for &c in a {
            diff[c as usize] += wa;
        }
        for &c in b {
            diff[c as usize] -= wb;
        }
        0.5 * diff.iter().map(|d| d.abs()).sum::<f64>()
    };
    permutation_pvalue(x, y, stat, n_perms, seed)
}
