use proptest::prelude::*;
use rand::Rng;
use tabeval::distance::{euclidean_distance, gower_distance};
use tabeval::{nn_distances, normalize, ColumnKind, DistanceKind, NormalizationSpec, Table};
use tabeval_testkit::oracles::{brute_force_nn, ranges_of};
use tabeval_testkit::{mixed_table, rng, tie_heavy_table};

fn check_against_brute_force(
    query: &Table,
    reference: &Table,
    k: usize,
    loo: bool,
    kind: DistanceKind,
) {
    let got = nn_distances(query, reference, k, loo, kind, &ranges_of(reference)).unwrap();
    let want = brute_force_nn(query, reference, k, loo, kind);
    assert_eq!(got.len(), want.len());
    for (i, w) in want.iter().enumerate() {
        let g: Vec<(usize, f64)> = got.row(i).iter().map(|n| (n.index, n.distance)).collect();
        assert_eq!(&g, w, "row {i} ({kind:?}, k={k}, loo={loo})");
    }
}

#[test]
fn nearest_neighbours_match_exhaustive_search_on_fifty_tables() {
    let mut r = rng(2024);
    for t in 0..50 {
        let n = r.gen_range(5..=200);
        let n_num = r.gen_range(1..=5);
        let n_cat = r.gen_range(0..=(8 - n_num).min(3));
        let seed = r.gen::<u64>();
        // alternate smooth and tie-heavy data so the tie rule is exercised
        let reference = if t % 2 == 0 {
            mixed_table(n, n_num, n_cat, seed)
        } else {
            tie_heavy_table(n, n_num, n_cat, seed)
        };
        let query = mixed_table(r.gen_range(1..=60), n_num, n_cat, seed ^ 1);
        let query = if t % 2 == 0 {
            query
        } else {
            tie_heavy_table(query.n_rows(), n_num, n_cat, seed ^ 1)
        };
        let k = r.gen_range(1..=3.min(n - 1));
        for kind in [DistanceKind::Gower, DistanceKind::Euclidean] {
            check_against_brute_force(&query, &reference, k, false, kind);
            check_against_brute_force(&reference, &reference, k, true, kind);
        }
    }
}

fn record(n_num: usize, n_cat: usize) -> impl Strategy<Value = Vec<f64>> {
    (
        prop::collection::vec(-1.0e3..1.0e3f64, n_num),
        prop::collection::vec(0u32..4, n_cat),
    )
        .prop_map(|(nums, cats)| {
            nums.into_iter()
                .chain(cats.into_iter().map(f64::from))
                .collect()
        })
}

proptest! {
    #[test]
    fn gower_is_bounded_and_symmetric(
        (a, b) in (record(3, 2), record(3, 2)),
        ranges in prop::collection::vec(0.0..5.0e3f64, 3),
    ) {
        let kinds = [ColumnKind::Numerical, ColumnKind::Numerical, ColumnKind::Numerical,
                     ColumnKind::Categorical, ColumnKind::Categorical];
        // ranges cover the values, as they do when taken from the real table
        let ranges: Vec<f64> = ranges.iter().enumerate()
            .map(|(j, r)| r.max((a[j] - b[j]).abs()))
            .chain([0.0, 0.0])
            .collect();
        let ab = gower_distance(&a, &b, &kinds, &ranges).unwrap();
        let ba = gower_distance(&b, &a, &kinds, &ranges).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(gower_distance(&a, &a, &kinds, &ranges).unwrap(), 0.0);
        let e_ab = euclidean_distance(&a, &b, &kinds, &ranges).unwrap();
        prop_assert_eq!(e_ab, euclidean_distance(&b, &a, &kinds, &ranges).unwrap());
        prop_assert!(e_ab >= 0.0);
    }

    #[test]
    fn normalization_round_trips(seed in any::<u64>(), n in 2usize..80) {
        let t = mixed_table(n, 3, 2, seed);
        let spec = NormalizationSpec::fit(&t, &[]).unwrap();
        let norm = normalize(&t, &spec).unwrap();
        for j in norm.numerical_indices() {
            prop_assert!(norm.column(j).as_numerical().unwrap().iter().all(|v| (0.0..=1.0).contains(v)));
        }
        let back = tabeval::dataset::denormalize(&norm, &spec).unwrap();
        for j in 0..t.n_cols() {
            match (t.column(j).as_numerical(), back.column(j).as_numerical()) {
                (Some(x), Some(y)) => {
                    for (a, b) in x.iter().zip(y) {
                        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
                    }
                }
                _ => prop_assert_eq!(t.column(j).value_string(0), back.column(j).value_string(0)),
            }
        }
    }
}
