//! Mixed-type distance kernels and exact nearest-neighbour queries.
//!
//! Records are rows in the raw encoding of [`Table::to_features`]: numerical
//! values as-is and categorical level codes. Numerical differences are
//! scaled by the real-table range, so synthetic values outside that range can
//! contribute more than 1 to a Gower distance.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{ColumnKind, FeatureMatrix, Table};
use crate::error::{EvalError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    #[default]
    Gower,
    Euclidean,
}

impl std::str::FromStr for DistanceKind {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gower" => Ok(DistanceKind::Gower),
            "euclidean" => Ok(DistanceKind::Euclidean),
            other => Err(EvalError::Config(format!(
                "unknown distance kind `{other}`"
            ))),
        }
    }
}

fn check_schema(a: &[f64], b: &[f64], kinds: &[ColumnKind]) -> Result<()> {
    if a.len() != kinds.len() || b.len() != kinds.len() {
        return Err(EvalError::Schema(format!(
            "records of length {} and {} do not match a schema of {} columns",
            a.len(),
            b.len(),
            kinds.len()
        )));
    }
    Ok(())
}

/// Mean over attributes of `|a - b| / range` (numerical, 0 for constant
/// columns) and the 0/1 mismatch (categorical).
pub fn gower_distance(a: &[f64], b: &[f64], kinds: &[ColumnKind], ranges: &[f64]) -> Result<f64> {
    check_schema(a, b, kinds)?;
    if ranges.len() != kinds.len() {
        return Err(EvalError::Schema(
            "range vector does not match schema".into(),
        ));
    }
    if kinds.is_empty() {
        return Ok(0.0);
    }
    let total: f64 = kinds
        .iter()
        .enumerate()
        .map(|(j, kind)| attribute_gap(*kind, a[j], b[j], scale_for(ranges[j])))
        .sum();
    Ok(total / kinds.len() as f64)
}

/// L2 distance after min-max scaling numericals by `ranges` and one-hot
/// expanding categoricals (a level mismatch contributes `(1, -1)`).
pub fn euclidean_distance(
    a: &[f64],
    b: &[f64],
    kinds: &[ColumnKind],
    ranges: &[f64],
) -> Result<f64> {
    check_schema(a, b, kinds)?;
    if ranges.len() != kinds.len() {
        return Err(EvalError::Schema(
            "range vector does not match schema".into(),
        ));
    }
    let sq: f64 = kinds
        .iter()
        .enumerate()
        .map(|(j, kind)| squared_gap(*kind, a[j], b[j], scale_for(ranges[j])))
        .sum();
    Ok(sq.sqrt())
}

fn scale_for(range: f64) -> f64 {
    if range > 0.0 {
        1.0 / range
    } else {
        0.0
    }
}

#[inline]
fn attribute_gap(kind: ColumnKind, a: f64, b: f64, scale: f64) -> f64 {
    match kind {
        ColumnKind::Numerical => (a - b).abs() * scale,
        ColumnKind::Categorical => {
            if a == b {
                0.0
            } else {
                1.0
            }
        }
    }
}

#[inline]
fn squared_gap(kind: ColumnKind, a: f64, b: f64, scale: f64) -> f64 {
    match kind {
        ColumnKind::Numerical => {
            let d = (a - b) * scale;
            d * d
        }
        ColumnKind::Categorical => {
            if a == b {
                0.0
            } else {
                2.0
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
}

/// For each query row, its `k` nearest reference rows ordered by distance
/// then by reference row id.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborResult {
    k: usize,
    neighbors: Vec<Vec<Neighbor>>,
}

impl NeighborResult {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn row(&self, i: usize) -> &[Neighbor] {
        &self.neighbors[i]
    }

    pub fn rows(&self) -> &[Vec<Neighbor>] {
        &self.neighbors
    }

    /// Distance to the `rank`-th neighbour (0-based) of every query row.
    pub fn distances_at(&self, rank: usize) -> Vec<f64> {
        self.neighbors.iter().map(|n| n[rank].distance).collect()
    }

    pub fn nearest_distances(&self) -> Vec<f64> {
        self.distances_at(0)
    }
}

/// Exact pairwise nearest-neighbour structure over a reference table.
#[derive(Clone, Debug)]
pub struct DistanceIndex {
    kind: DistanceKind,
    kinds: Vec<ColumnKind>,
    scales: Vec<f64>,
    weights: Vec<f64>,
    weight_sum: f64,
    reference: FeatureMatrix,
}

impl DistanceIndex {
    /// `ranges[j]` is the numerical range used to scale column `j`
    /// (ignored for categorical columns).
    pub fn new(reference: &Table, ranges: &[f64], kind: DistanceKind) -> Result<Self> {
        if ranges.len() != reference.n_cols() {
            return Err(EvalError::Schema(format!(
                "{} ranges supplied for {} columns",
                ranges.len(),
                reference.n_cols()
            )));
        }
        let n = reference.n_cols();
        Ok(DistanceIndex {
            kind,
            kinds: reference.kinds(),
            scales: ranges.iter().map(|&r| scale_for(r)).collect(),
            weights: vec![1.0; n],
            weight_sum: n as f64,
            reference: reference.all_features(),
        })
    }

    /// Per-column attribute weights. Gower becomes `sum(w d) / sum(w)` and
    /// Euclidean `sqrt(sum(w d^2))`.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.kinds.len() || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(EvalError::InvalidInput(
                "weights must be one finite non-negative value per column".into(),
            ));
        }
        self.weight_sum = weights.iter().sum();
        self.weights = weights;
        Ok(self)
    }

    pub fn kind(&self) -> DistanceKind {
        self.kind
    }

    pub fn n_reference(&self) -> usize {
        self.reference.n_rows()
    }

    /// Distance between two raw-encoded records under this index's settings.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self.kind {
            DistanceKind::Gower => {
                if self.weight_sum <= 0.0 {
                    return 0.0;
                }
                let mut total = 0.0;
                for j in 0..self.kinds.len() {
                    total +=
                        self.weights[j] * attribute_gap(self.kinds[j], a[j], b[j], self.scales[j]);
                }
                total / self.weight_sum
            }
            DistanceKind::Euclidean => {
                let mut total = 0.0;
                for j in 0..self.kinds.len() {
                    total +=
                        self.weights[j] * squared_gap(self.kinds[j], a[j], b[j], self.scales[j]);
                }
                total.sqrt()
            }
        }
    }

    /// Exact `k` nearest reference rows for every query row. With
    /// `leave_one_out`, the query table must be the reference table and row
    /// `i` never matches itself.
    pub fn query(&self, query: &Table, k: usize, leave_one_out: bool) -> Result<NeighborResult> {
        if k == 0 {
            return Err(EvalError::InvalidInput("k must be at least 1".into()));
        }
        if query.kinds() != self.kinds {
            return Err(EvalError::Schema(
                "query table schema does not match the reference".into(),
            ));
        }
        let n_ref = self.reference.n_rows();
        let available = if leave_one_out {
            n_ref.saturating_sub(1)
        } else {
            n_ref
        };
        if leave_one_out && query.n_rows() != n_ref {
            return Err(EvalError::InvalidInput(
                "leave-one-out queries must use the reference table itself".into(),
            ));
        }
        if k > available {
            return Err(EvalError::InsufficientData(format!(
                "k = {k} exceeds the {available} available reference rows"
            )));
        }
        let q = query.all_features();
        let neighbors = (0..q.n_rows())
            .into_par_iter()
            .map(|i| self.scan(q.row(i), k, leave_one_out.then_some(i)))
            .collect();
        Ok(NeighborResult { k, neighbors })
    }

    fn scan(&self, row: &[f64], k: usize, skip: Option<usize>) -> Vec<Neighbor> {
        let mut best: Vec<Neighbor> = Vec::with_capacity(k + 1);
        for (r, other) in self.reference.rows().enumerate() {
            if Some(r) == skip {
                continue;
            }
            let d = self.distance(row, other);
            if best.len() == k && d >= best[k - 1].distance {
                continue;
            }
            // rows arrive in id order, so equal distances keep the lower id first
            let pos = best.partition_point(|n| n.distance <= d);
            best.insert(
                pos,
                Neighbor {
                    index: r,
                    distance: d,
                },
            );
            best.truncate(k);
        }
        best
    }
}

/// Convenience wrapper building a [`DistanceIndex`] over `reference`.
pub fn nn_distances(
    query: &Table,
    reference: &Table,
    k: usize,
    leave_one_out: bool,
    kind: DistanceKind,
    ranges: &[f64],
) -> Result<NeighborResult> {
    DistanceIndex::new(reference, ranges, kind)?.query(query, k, leave_one_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Column;
    use approx::assert_abs_diff_eq;

    const NUM_CAT: [ColumnKind; 2] = [ColumnKind::Numerical, ColumnKind::Categorical];

    #[test]
    fn gower_hand_examples() {
        let ranges = [10.0, 0.0];
        assert_eq!(
            gower_distance(&[2.0, 0.0], &[2.0, 0.0], &NUM_CAT, &ranges).unwrap(),
            0.0
        );
        assert_abs_diff_eq!(
            gower_distance(&[2.0, 0.0], &[7.0, 1.0], &NUM_CAT, &ranges).unwrap(),
            0.75,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            gower_distance(&[2.0, 0.0], &[7.0, 0.0], &NUM_CAT, &ranges).unwrap(),
            0.25,
            epsilon = 1e-15
        );
    }

    #[test]
    fn gower_constant_column_contributes_zero() {
        let kinds = [ColumnKind::Numerical, ColumnKind::Numerical];
        let d = gower_distance(&[1.0, 5.0], &[1.0, 9.0], &kinds, &[2.0, 0.0]).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn euclidean_hand_examples() {
        let kinds = [ColumnKind::Numerical, ColumnKind::Numerical];
        let ranges = [1.0, 1.0];
        assert_eq!(
            euclidean_distance(&[0.0, 0.0], &[0.0, 0.0], &kinds, &ranges).unwrap(),
            0.0
        );
        assert_abs_diff_eq!(
            euclidean_distance(&[0.0, 0.0], &[3.0, 4.0], &kinds, &ranges).unwrap(),
            5.0,
            epsilon = 1e-15
        );
        let cat = [ColumnKind::Categorical];
        assert_abs_diff_eq!(
            euclidean_distance(&[0.0], &[1.0], &cat, &[0.0]).unwrap(),
            2f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn schema_mismatch_is_an_error() {
        assert!(gower_distance(&[1.0], &[1.0, 2.0], &NUM_CAT, &[1.0, 0.0]).is_err());
        assert!(euclidean_distance(&[1.0, 0.0], &[1.0, 2.0], &NUM_CAT[..1], &[1.0]).is_err());
    }

    fn line(values: &[f64]) -> Table {
        Table::new(vec![Column::numerical("x", values.to_vec())]).unwrap()
    }

    #[test]
    fn one_dimensional_neighbours() {
        let reference = line(&[0.0, 1.0, 2.0, 10.0, 11.0]);
        let query = line(&[2.0]);
        let res = nn_distances(
            &query,
            &reference,
            2,
            false,
            DistanceKind::Euclidean,
            &[1.0],
        )
        .unwrap();
        let ids: Vec<usize> = res.row(0).iter().map(|n| n.index).collect();
        assert_eq!(ids, vec![2, 1]);
        // leave-one-out drops the identical point and finds 1 then 0
        let res = nn_distances(
            &reference,
            &reference,
            2,
            true,
            DistanceKind::Euclidean,
            &[1.0],
        )
        .unwrap();
        let ids: Vec<usize> = res.row(2).iter().map(|n| n.index).collect();
        assert_eq!(ids, vec![1, 0]);
        assert_eq!(res.row(2)[0].distance, 1.0);
        assert_eq!(res.row(2)[1].distance, 2.0);
    }

    #[test]
    fn identical_reference_row_gives_zero() {
        let reference = line(&[3.0, 4.0]);
        let res = nn_distances(
            &line(&[4.0]),
            &reference,
            1,
            false,
            DistanceKind::Gower,
            &[1.0],
        )
        .unwrap();
        assert_eq!(
            res.row(0)[0],
            Neighbor {
                index: 1,
                distance: 0.0
            }
        );
    }

    #[test]
    fn leave_one_out_prefers_duplicate_over_self() {
        let t = line(&[5.0, 5.0, 9.0]);
        let res = nn_distances(&t, &t, 1, true, DistanceKind::Gower, &[4.0]).unwrap();
        assert_eq!(
            res.row(0)[0],
            Neighbor {
                index: 1,
                distance: 0.0
            }
        );
        assert_eq!(
            res.row(1)[0],
            Neighbor {
                index: 0,
                distance: 0.0
            }
        );
        assert_eq!(res.row(2)[0].distance, 1.0);
    }

    #[test]
    fn ties_go_to_lower_row_id() {
        let reference = line(&[1.0, 3.0, 1.0]);
        let res = nn_distances(
            &line(&[2.0]),
            &reference,
            3,
            false,
            DistanceKind::Gower,
            &[2.0],
        )
        .unwrap();
        let ids: Vec<usize> = res.row(0).iter().map(|n| n.index).collect();
        assert_eq!(ids, vec![0, 1, 2]);
    }

    #[test]
    fn k_larger_than_reference_errors() {
        let t = line(&[1.0, 2.0]);
        assert!(nn_distances(&t, &t, 3, false, DistanceKind::Gower, &[1.0]).is_err());
        assert!(nn_distances(&t, &t, 2, true, DistanceKind::Gower, &[1.0]).is_err());
        assert!(nn_distances(&t, &t, 0, false, DistanceKind::Gower, &[1.0]).is_err());
    }

    #[test]
    fn unit_weights_match_unweighted_exactly() {
        let t = Table::new(vec![
            Column::numerical("a", vec![0.1, 0.7, 0.3]),
            Column::categorical("b", ["x", "y", "x"]),
        ])
        .unwrap();
        let plain = DistanceIndex::new(&t, &[0.6, 0.0], DistanceKind::Gower).unwrap();
        let weighted = plain.clone().with_weights(vec![1.0, 1.0]).unwrap();
        assert_eq!(
            plain.query(&t, 2, true).unwrap(),
            weighted.query(&t, 2, true).unwrap()
        );
    }
}
