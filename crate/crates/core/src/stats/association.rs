use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dataset::{ColumnData, Table};
use crate::error::{EvalError, Result};

/// Square association matrix indexed by column names (row-major).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixSummary {
    names: Vec<String>,
    values: Vec<f64>,
}

impl MatrixSummary {
    pub fn new(names: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != names.len() * names.len() {
            return Err(EvalError::InvalidInput(format!(
                "{} values for a {n}x{n} matrix",
                values.len(),
                n = names.len()
            )));
        }
        Ok(MatrixSummary { names, values })
    }

    fn from_fn(names: Vec<String>, f: impl Fn(usize, usize) -> f64) -> Self {
        let n = names.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
            for j in i + 1..n {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        MatrixSummary { names, values }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim() + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks(self.dim().max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Element-wise `self - other`.
    pub fn difference(&self, other: &MatrixSummary) -> Result<MatrixSummary> {
        if self.names != other.names {
            return Err(EvalError::Schema(
                "matrices have different shapes or index order".into(),
            ));
        }
        Ok(MatrixSummary {
            names: self.names.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// Frobenius norm of `a - b`.
pub fn frobenius_diff(a: &MatrixSummary, b: &MatrixSummary) -> Result<f64> {
    Ok(a.difference(b)?
        .values
        .iter()
        .map(|d| d * d)
        .sum::<f64>()
        .sqrt())
}

/// Pearson correlation; 0 when either sample has zero variance.
pub fn pearson_corr(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().min(y.len());
    if n < 2 {
        return 0.0;
    }
    let mx = super::mean(&x[..n]);
    let my = super::mean(&y[..n]);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (dx, dy) = (x[i] - mx, y[i] - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return 0.0;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

fn joint_counts(x: &[u32], y: &[u32]) -> BTreeMap<(u32, u32), usize> {
    let mut joint = BTreeMap::new();
    for (&a, &b) in x.iter().zip(y) {
        *joint.entry((a, b)).or_insert(0) += 1;
    }
    joint
}

fn marginal(codes: &[u32]) -> Vec<usize> {
    let n_levels = codes.iter().max().map_or(0, |&m| m as usize + 1);
    let mut counts = vec![0usize; n_levels];
    for &c in codes {
        counts[c as usize] += 1;
    }
    counts
}

/// Cramer's V from the contingency table of two code samples. Levels that
/// never occur are ignored; a variable with a single level gives 0.
pub fn cramers_v(x: &[u32], y: &[u32]) -> f64 {
    let n = x.len().min(y.len());
    if n < 2 {
        return 0.0;
    }
    let (x, y) = (&x[..n], &y[..n]);
    let (mx, my) = (marginal(x), marginal(y));
    let r = mx.iter().filter(|&&c| c > 0).count();
    let c = my.iter().filter(|&&c| c > 0).count();
    let k = r.min(c);
    if k < 2 {
        return 0.0;
    }
    let nf = n as f64;
    let joint = joint_counts(x, y);
    // chi^2 = n * (sum O^2 / (r_i c_j) - 1), summing only over observed cells
    let s: f64 = joint
        .iter()
        .map(|(&(a, b), &o)| (o * o) as f64 / (mx[a as usize] as f64 * my[b as usize] as f64))
        .sum();
    let chi2 = (nf * (s - 1.0)).max(0.0);
    (chi2 / (nf * (k - 1) as f64)).sqrt().clamp(0.0, 1.0)
}

/// Correlation ratio: sqrt(between-category sum of squares / total sum of
/// squares); 0 for zero total variance.
pub fn correlation_ratio(cat: &[u32], num: &[f64]) -> f64 {
    let n = cat.len().min(num.len());
    if n < 2 {
        return 0.0;
    }
    let m = super::mean(&num[..n]);
    let n_levels = cat[..n].iter().max().map_or(0, |&c| c as usize + 1);
    let mut sums = vec![0.0; n_levels];
    let mut counts = vec![0usize; n_levels];
    for i in 0..n {
        sums[cat[i] as usize] += num[i];
        counts[cat[i] as usize] += 1;
    }
    let total: f64 = num[..n].iter().map(|v| (v - m) * (v - m)).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let between: f64 = sums
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c > 0)
        .map(|(s, &c)| {
            let mk = s / c as f64;
            c as f64 * (mk - m) * (mk - m)
        })
        .sum();
    (between / total).sqrt().clamp(0.0, 1.0)
}

/// Pairwise association matrix: Pearson for numerical pairs, Cramer's V for
/// categorical pairs and the correlation ratio for mixed pairs.
pub fn mixed_correlation_matrix(table: &Table) -> Result<MatrixSummary> {
    if table.n_rows() < 2 {
        return Err(EvalError::InsufficientData(
            "correlation matrix needs at least two rows".into(),
        ));
    }
    let names = table.names().into_iter().map(str::to_string).collect();
    let cols = table.columns();
    Ok(MatrixSummary::from_fn(names, |i, j| {
        match (cols[i].data(), cols[j].data()) {
            (ColumnData::Numerical(a), ColumnData::Numerical(b)) => pearson_corr(a, b),
            (
                ColumnData::Categorical { codes: a, .. },
                ColumnData::Categorical { codes: b, .. },
            ) => cramers_v(a, b),
            (ColumnData::Categorical { codes, .. }, ColumnData::Numerical(v))
            | (ColumnData::Numerical(v), ColumnData::Categorical { codes, .. }) => {
                correlation_ratio(codes, v)
            }
        }
    }))
}

/// Shannon entropy (nats) of a code sample.
pub fn entropy(codes: &[u32]) -> f64 {
    let n = codes.len() as f64;
    if codes.is_empty() {
        return 0.0;
    }
    -marginal(codes)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Mutual information (nats) between two code samples.
pub fn mutual_information(x: &[u32], y: &[u32]) -> f64 {
    let n = x.len().min(y.len());
    if n == 0 {
        return 0.0;
    }
    let (x, y) = (&x[..n], &y[..n]);
    let (mx, my) = (marginal(x), marginal(y));
    let nf = n as f64;
    joint_counts(x, y)
        .iter()
        .map(|(&(a, b), &o)| {
            let pxy = o as f64 / nf;
            pxy * (o as f64 * nf / (mx[a as usize] as f64 * my[b as usize] as f64)).ln()
        })
        .sum::<f64>()
        .max(0.0)
}

/// `MI(x, y) / mean(H(x), H(y))`, with 1 when both entropies vanish.
pub fn normalized_mutual_information(x: &[u32], y: &[u32]) -> f64 {
    let (hx, hy) = (entropy(x), entropy(y));
    if hx <= 1e-15 && hy <= 1e-15 {
        return 1.0;
    }
    let denom = 0.5 * (hx + hy);
    (mutual_information(x, y) / denom).clamp(0.0, 1.0)
}

/// Pairwise normalised mutual information over discretised columns, with
/// unit diagonal.
pub fn nmi_matrix(names: Vec<String>, codes: &[Vec<u32>]) -> Result<MatrixSummary> {
    if names.len() != codes.len() {
        return Err(EvalError::InvalidInput(
            "one name per discretised column required".into(),
        ));
    }
    Ok(MatrixSummary::from_fn(names, |i, j| {
        normalized_mutual_information(&codes[i], &codes[j])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Column;
    use approx::assert_abs_diff_eq;

    fn contingency(cells: [[usize; 2]; 2]) -> (Vec<u32>, Vec<u32>) {
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for (a, row) in cells.iter().enumerate() {
            for (b, &count) in row.iter().enumerate() {
                x.extend(std::iter::repeat_n(a as u32, count));
                y.extend(std::iter::repeat_n(b as u32, count));
            }
        }
        (x, y)
    }

    #[test]
    fn cramers_v_examples() {
        let (x, y) = contingency([[10, 0], [0, 10]]);
        assert_abs_diff_eq!(cramers_v(&x, &y), 1.0, epsilon = 1e-12);
        let (x, y) = contingency([[5, 5], [5, 5]]);
        assert_abs_diff_eq!(cramers_v(&x, &y), 0.0, epsilon = 1e-12);
        let (x, y) = contingency([[8, 2], [2, 8]]);
        assert_abs_diff_eq!(cramers_v(&x, &y), 0.6, epsilon = 1e-12);
        assert_eq!(cramers_v(&[0, 0, 0], &[0, 1, 0]), 0.0);
    }

    #[test]
    fn correlation_ratio_examples() {
        assert_abs_diff_eq!(
            correlation_ratio(&[0, 0, 1, 1], &[0.0, 0.0, 1.0, 1.0]),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            correlation_ratio(&[0, 0, 1, 1], &[1.0, 3.0, 3.0, 1.0]),
            0.0,
            epsilon = 1e-12
        );
        assert_eq!(correlation_ratio(&[0, 1], &[2.0, 2.0]), 0.0);
    }

    #[test]
    fn pearson_examples() {
        assert_abs_diff_eq!(
            pearson_corr(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            pearson_corr(&[1.0, 2.0, 3.0], &[-1.0, -2.0, -3.0]),
            -1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            pearson_corr(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]),
            0.5,
            epsilon = 1e-12
        );
        assert_eq!(pearson_corr(&[1.0, 1.0, 1.0], &[1.0, 3.0, 2.0]), 0.0);
    }

    #[test]
    fn mixed_matrix_examples() {
        let single = Table::new(vec![Column::numerical("a", vec![1.0, 2.0, 4.0])]).unwrap();
        assert_eq!(mixed_correlation_matrix(&single).unwrap().values(), &[1.0]);

        let dup = Table::new(vec![
            Column::numerical("a", vec![1.0, 2.0, 4.0]),
            Column::numerical("b", vec![1.0, 2.0, 4.0]),
        ])
        .unwrap();
        assert_abs_diff_eq!(
            mixed_correlation_matrix(&dup).unwrap().get(0, 1),
            1.0,
            epsilon = 1e-12
        );

        let mixed = Table::new(vec![
            Column::categorical("c", ["a", "a", "b", "b"]),
            Column::numerical("n", vec![0.0, 0.0, 1.0, 1.0]),
        ])
        .unwrap();
        let m = mixed_correlation_matrix(&mixed).unwrap();
        assert_abs_diff_eq!(m.get(0, 1), 1.0, epsilon = 1e-12);
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn nmi_examples() {
        let x = [0, 1, 0, 1];
        assert_abs_diff_eq!(normalized_mutual_information(&x, &x), 1.0, epsilon = 1e-12);
        // balanced product distribution
        assert_abs_diff_eq!(
            normalized_mutual_information(&[0, 0, 1, 1], &[0, 1, 0, 1]),
            0.0,
            epsilon = 1e-12
        );
        assert_eq!(normalized_mutual_information(&[0, 0, 0], &[0, 0, 0]), 1.0);
        assert_eq!(
            normalized_mutual_information(&[0, 0, 0, 0], &[0, 1, 0, 1]),
            0.0
        );
        let m = nmi_matrix(
            vec!["c".into(), "x".into()],
            &[vec![0, 0, 0, 0], vec![0, 1, 0, 1]],
        )
        .unwrap();
        assert_eq!(m.values(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn frobenius_examples() {
        let names = vec!["a".to_string(), "b".to_string()];
        let a = MatrixSummary::new(names.clone(), vec![1.0, 0.5, 0.5, 1.0]).unwrap();
        let b = MatrixSummary::new(names, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(frobenius_diff(&a, &a).unwrap(), 0.0);
        assert_abs_diff_eq!(frobenius_diff(&a, &b).unwrap(), 1.0, epsilon = 1e-15);
        let c = MatrixSummary::new(vec!["a".into()], vec![1.0]).unwrap();
        assert!(frobenius_diff(&a, &c).is_err());
    }
}
