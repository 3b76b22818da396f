use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::Rng;
use tabeval::stats::{
    correlation_ratio, cramers_v, hellinger, ks_statistic, scott_width, tvd_permutation_pvalue,
    PcaModel, ProbabilityVector,
};
use tabeval::{Column, Table};
use tabeval_testkit::oracles::{ecdf_sweep, ks_to_uniform};
use tabeval_testkit::rng;

#[test]
fn ks_statistic_matches_ecdf_sweep_on_random_pairs() {
    let mut r = rng(7);
    for case in 0..100 {
        let n = r.gen_range(1..120);
        let m = r.gen_range(1..120);
        // every third case draws from a small integer grid to force ties
        let draw = |r: &mut rand_chacha::ChaCha8Rng| -> f64 {
            if case % 3 == 0 {
                f64::from(r.gen_range(0..6u8))
            } else {
                r.gen_range(-3.0..3.0)
            }
        };
        let x: Vec<f64> = (0..n).map(|_| draw(&mut r)).collect();
        let y: Vec<f64> = (0..m).map(|_| draw(&mut r) + 0.3).collect();
        let got = ks_statistic(&x, &y).unwrap();
        assert!((got - ecdf_sweep(&x, &y)).abs() <= 1e-12, "case {case}");
    }
}

#[test]
fn ks_shifted_grid_example() {
    assert!(
        (ks_statistic(&[1.0, 2.0, 3.0, 4.0], &[2.0, 3.0, 4.0, 5.0]).unwrap() - 0.25).abs() < 1e-12
    );
}

#[test]
fn null_tvd_pvalues_are_close_to_uniform() {
    let mut r = rng(99);
    let weights = [0.4, 0.3, 0.2, 0.1];
    let mut draw = |n: usize| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let u: f64 = r.gen();
                let mut acc = 0.0;
                weights
                    .iter()
                    .position(|w| {
                        acc += w;
                        u < acc
                    })
                    .unwrap_or(3) as u32
            })
            .collect()
    };
    let pvalues: Vec<f64> = (0..200)
        .map(|i| {
            let (x, y) = (draw(80), draw(100));
            tvd_permutation_pvalue(&x, &y, 4, 1000, i).unwrap()
        })
        .collect();
    let d = ks_to_uniform(pvalues);
    assert!(d < 0.15, "KS distance to uniform {d}");
}

#[test]
fn disjoint_categories_are_significant() {
    let x = vec![0u32; 200];
    let y = vec![1u32; 200];
    assert!(tvd_permutation_pvalue(&x, &y, 2, 1000, 5).unwrap() <= 0.01);
}

#[test]
fn analytic_association_values() {
    let a = [0, 0, 1, 1, 2, 2];
    assert!((cramers_v(&a, &a) - 1.0).abs() < 1e-9);
    assert!(cramers_v(&[0, 0, 1, 1], &[0, 1, 0, 1]).abs() < 1e-9);
    // contingency table [[8, 2], [2, 8]]: chi2 = 7.2, n = 20
    let x: Vec<u32> = (0..20).map(|i| u32::from(i >= 10)).collect();
    let y: Vec<u32> = (0..20)
        .map(|i| u32::from((i >= 10) != (i % 10 >= 8)))
        .collect();
    assert!((cramers_v(&x, &y) - 0.6).abs() < 1e-9);
    assert!(correlation_ratio(&[0, 0, 1, 1], &[1.0, 2.0, 1.0, 2.0]).abs() < 1e-9);
    assert!((correlation_ratio(&[0, 0, 1, 1], &[1.0, 1.0, 5.0, 5.0]) - 1.0).abs() < 1e-9);
    let p = ProbabilityVector::new(vec![1.0, 0.0]).unwrap();
    let q = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
    let want = (1.0 - 0.5f64.sqrt()).sqrt();
    assert!((hellinger(&p, &q).unwrap() - want).abs() < 1e-9);
    assert!((want - 0.5412).abs() < 1e-4);
    assert!((scott_width(1.0, 1000) - 0.349).abs() < 5e-4);
}

fn numeric_table(n: usize, d: usize, seed: u64) -> Table {
    let mut r = rng(seed);
    let latent: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
    let cols = (0..d)
        .map(|j| {
            let v = latent
                .iter()
                .map(|z| (j as f64 + 1.0) * z + r.gen_range(-0.5..0.5) * (1.0 + j as f64 * 0.2))
                .collect();
            Column::numerical(format!("x{j}"), v)
        })
        .collect();
    Table::new(cols).unwrap()
}

#[test]
fn pca_matches_dense_symmetric_eigendecomposition() {
    let (n, d) = (100, 5);
    let t = numeric_table(n, d, 11);
    let model = PcaModel::fit(&t).unwrap();

    let mut z = DMatrix::<f64>::zeros(n, d);
    for j in 0..d {
        let col = t.column(j).as_numerical().unwrap();
        let mean = col.iter().sum::<f64>() / n as f64;
        let sd = (col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
        for i in 0..n {
            z[(i, j)] = (col[i] - mean) / sd;
        }
    }
    let cov = z.transpose() * &z / (n - 1) as f64;
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    for (k, &idx) in order.iter().enumerate() {
        assert!(
            (model.eigenvalues()[k] - eig.eigenvalues[idx]).abs() < 1e-8,
            "eigenvalue {k}"
        );
        let want = eig.eigenvectors.column(idx);
        let got = &model.components()[k];
        let dot: f64 = got.iter().zip(want.iter()).map(|(a, b)| a * b).sum();
        assert!(
            (dot.abs() - 1.0).abs() < 1e-8,
            "component {k} alignment {dot}"
        );
    }
    for a in 0..d {
        for b in 0..d {
            let dot: f64 = model.components()[a]
                .iter()
                .zip(&model.components()[b])
                .map(|(x, y)| x * y)
                .sum();
            let want = if a == b { 1.0 } else { 0.0 };
            assert!((dot - want).abs() < 1e-10);
        }
    }
    let ratio: f64 = model.explained_variance_ratio().iter().sum();
    assert!((ratio - 1.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn ks_statistic_is_a_symmetric_fraction(
        x in prop::collection::vec(-50i32..50, 1..40),
        y in prop::collection::vec(-50i32..50, 1..40),
    ) {
        let x: Vec<f64> = x.into_iter().map(f64::from).collect();
        let y: Vec<f64> = y.into_iter().map(f64::from).collect();
        let d = ks_statistic(&x, &y).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, ks_statistic(&y, &x).unwrap());
        prop_assert!((d - ecdf_sweep(&x, &y)).abs() <= 1e-12);
    }
}
