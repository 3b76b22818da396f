//! Seeded generators of mixed numerical/categorical tables for tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub mod oracles;

use tabeval::{validate_context, Column, ColumnData, EvalContext, Table};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn level_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("l{i}")).collect()
}

/// Table with `n_num` correlated Gaussian columns `num_*` and `n_cat`
/// categorical columns `cat_*` (2 to 5 levels). Every second categorical
/// column depends on a numerical column so association matrices are not
/// trivial.
pub fn mixed_table(n_rows: usize, n_num: usize, n_cat: usize, seed: u64) -> Table {
    let mut rng = rng(seed);
    let std = Normal::new(0.0, 1.0).unwrap();
    let latent: Vec<f64> = (0..n_rows).map(|_| std.sample(&mut rng)).collect();
    let mut columns = Vec::with_capacity(n_num + n_cat);
    let mut nums: Vec<Vec<f64>> = Vec::with_capacity(n_num);
    for j in 0..n_num {
        let weight = 0.3 + 0.6 * (j % 3) as f64 / 2.0;
        let scale = 1.0 + j as f64;
        let offset = 10.0 * j as f64;
        let v: Vec<f64> = latent
            .iter()
            .map(|z| {
                offset
                    + scale * (weight * z + (1.0 - weight * weight).sqrt() * std.sample(&mut rng))
            })
            .collect();
        nums.push(v.clone());
        columns.push(Column::numerical(format!("num_{j}"), v));
    }
    for j in 0..n_cat {
        let k = 2 + j % 4;
        let codes: Vec<u32> = if j % 2 == 0 && !nums.is_empty() {
            let src = &nums[j % nums.len()];
            let mut sorted = src.clone();
            sorted.sort_by(f64::total_cmp);
            src.iter()
                .map(|v| {
                    if rng.gen_bool(0.2) {
                        rng.gen_range(0..k as u32)
                    } else {
                        let rank = sorted.partition_point(|x| x < v);
                        ((rank * k) / n_rows.max(1)).min(k - 1) as u32
                    }
                })
                .collect()
        } else {
            (0..n_rows).map(|_| rng.gen_range(0..k as u32)).collect()
        };
        columns.push(Column::from_codes(format!("cat_{j}"), level_names(k), codes).unwrap());
    }
    Table::new(columns).unwrap()
}

/// `mixed_table` plus a binary `target` column that is a noisy threshold of
/// the first numerical column.
pub fn labelled_table(n_rows: usize, n_num: usize, n_cat: usize, seed: u64) -> Table {
    let base = mixed_table(n_rows, n_num.max(1), n_cat, seed);
    let mut rng = rng(seed ^ 0x5eed);
    let x = base.column(0).as_numerical().unwrap();
    let codes: Vec<u32> = x
        .iter()
        .map(|v| {
            let clean = u32::from(*v > 0.0);
            if rng.gen_bool(0.05) {
                1 - clean
            } else {
                clean
            }
        })
        .collect();
    let mut columns = base.columns().to_vec();
    columns.push(Column::from_codes("target", vec!["no".into(), "yes".into()], codes).unwrap());
    Table::new(columns).unwrap()
}

/// Small-integer numericals and few categorical levels, so equal
/// distances are common.
pub fn tie_heavy_table(n_rows: usize, n_num: usize, n_cat: usize, seed: u64) -> Table {
    let mut rng = rng(seed);
    let mut columns = Vec::new();
    for j in 0..n_num {
        let v = (0..n_rows)
            .map(|_| f64::from(rng.gen_range(0..5u8)))
            .collect();
        columns.push(Column::numerical(format!("num_{j}"), v));
    }
    for j in 0..n_cat {
        let codes = (0..n_rows).map(|_| rng.gen_range(0..3u32)).collect();
        columns.push(Column::from_codes(format!("cat_{j}"), level_names(3), codes).unwrap());
    }
    Table::new(columns).unwrap()
}

/// Copy with Gaussian noise of `noise` standard deviations on numerical
/// columns and each categorical cell redrawn with probability `flip`.
pub fn perturbed_copy(table: &Table, noise: f64, flip: f64, seed: u64) -> Table {
    let mut rng = rng(seed);
    let std = Normal::new(0.0, 1.0).unwrap();
    let columns = table
        .columns()
        .iter()
        .map(|c| match c.data() {
            ColumnData::Numerical(v) => {
                let sd = tabeval::stats::std_dev(v);
                Column::numerical(
                    c.name(),
                    v.iter()
                        .map(|x| x + noise * sd * std.sample(&mut rng))
                        .collect(),
                )
            }
            ColumnData::Categorical { levels, codes } => {
                let k = levels.len() as u32;
                let codes = codes
                    .iter()
                    .map(|&code| {
                        if rng.gen_bool(flip) {
                            rng.gen_range(0..k)
                        } else {
                            code
                        }
                    })
                    .collect();
                Column::from_codes(c.name(), levels.clone(), codes).unwrap()
            }
        })
        .collect();
    Table::new(columns).unwrap()
}

/// Random disjoint split into `n_first` rows and the rest.
pub fn split(table: &Table, n_first: usize, seed: u64) -> (Table, Table) {
    let mut rows: Vec<usize> = (0..table.n_rows()).collect();
    rows.shuffle(&mut rng(seed));
    let (a, b) = rows.split_at(n_first);
    (table.take_rows(a), table.take_rows(b))
}

/// Rows in a random order.
pub fn shuffled_rows(table: &Table, seed: u64) -> Table {
    let mut rows: Vec<usize> = (0..table.n_rows()).collect();
    rows.shuffle(&mut rng(seed));
    table.take_rows(&rows)
}

/// Copy with the values of one column permuted, breaking its associations.
pub fn shuffled_column(table: &Table, name: &str, seed: u64) -> Table {
    let j = table.column_index(name).expect("column exists");
    let mut rows: Vec<usize> = (0..table.n_rows()).collect();
    rows.shuffle(&mut rng(seed));
    let moved = table.select(&[j]).unwrap().take_rows(&rows);
    let mut columns = table.columns().to_vec();
    columns[j] = moved.column(0).clone();
    Table::new(columns).unwrap()
}

/// Copy of `synthetic` whose first `round(fraction * n)` rows are replaced
/// by real rows (real rows drawn in a seeded order).
pub fn with_real_copies(synthetic: &Table, real: &Table, fraction: f64, seed: u64) -> Table {
    let n = synthetic.n_rows();
    let k = ((fraction * n as f64).round() as usize)
        .min(n)
        .min(real.n_rows());
    let mut real_rows: Vec<usize> = (0..real.n_rows()).collect();
    real_rows.shuffle(&mut rng(seed));
    let copied = real.take_rows(&real_rows[..k]);
    let rest: Vec<usize> = (k..n).collect();
    copied.concat(&synthetic.take_rows(&rest)).unwrap()
}

/// Table whose numerical columns are shifted by `shift` standard deviations.
pub fn shifted(table: &Table, shift: f64) -> Table {
    let columns = table
        .columns()
        .iter()
        .map(|c| match c.data() {
            ColumnData::Numerical(v) => {
                let sd = tabeval::stats::std_dev(v).max(1.0);
                Column::numerical(c.name(), v.iter().map(|x| x + shift * sd).collect())
            }
            ColumnData::Categorical { .. } => c.clone(),
        })
        .collect();
    Table::new(columns).unwrap()
}

pub fn context(
    real: &Table,
    synthetic: &Table,
    holdout: Option<&Table>,
    target: Option<&str>,
) -> EvalContext {
    validate_context(real.clone(), synthetic.clone(), holdout.cloned(), target)
        .expect("valid context")
}
