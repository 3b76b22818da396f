use crate::dataset::Table;
use crate::error::{EvalError, Result};

/// Eigen-decomposition of a symmetric `n x n` row-major matrix by cyclic
/// Jacobi rotations. Returns eigenvalues in non-increasing order and the
/// matching unit eigenvectors.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if matrix.len() != n * n {
        return Err(EvalError::InvalidInput("matrix is not square".into()));
    }
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..n).map(|k| v[k * n + i]).collect())
        .collect();
    Ok((values, vectors))
}

/// Principal components of standardised numerical columns.
#[derive(Clone, Debug)]
pub struct PcaModel {
    means: Vec<f64>,
    scales: Vec<f64>,
    eigenvalues: Vec<f64>,
    components: Vec<Vec<f64>>,
}

impl PcaModel {
    /// Fits on every column of `table`, which must be numerical.
    pub fn fit(table: &Table) -> Result<Self> {
        let cols = table
            .columns()
            .iter()
            .map(|c| {
                c.as_numerical().ok_or_else(|| {
                    EvalError::InvalidInput(format!("column `{}` is not numerical", c.name()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let d = cols.len();
        if d < 2 {
            return Err(EvalError::InsufficientData(
                "PCA needs at least two numerical columns".into(),
            ));
        }
        let n = table.n_rows();
        if n < 2 {
            return Err(EvalError::InsufficientData(
                "PCA needs at least two rows".into(),
            ));
        }
        let means: Vec<f64> = cols.iter().map(|c| super::mean(c)).collect();
        let scales: Vec<f64> = cols
            .iter()
            .map(|c| {
                let s = super::std_dev(c);
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        let mut cov = vec![0.0; d * d];
        for i in 0..d {
            for j in i..d {
                let s: f64 = (0..n)
                    .map(|r| {
                        ((cols[i][r] - means[i]) / scales[i])
                            * ((cols[j][r] - means[j]) / scales[j])
                    })
                    .sum::<f64>()
                    / (n - 1) as f64;
                cov[i * d + j] = s;
                cov[j * d + i] = s;
            }
        }
        let (eigenvalues, components) = symmetric_eigen(&cov, d)?;
        Ok(PcaModel {
            means,
            scales,
            eigenvalues,
            components,
        })
    }

    /// Variances along each component, largest first.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn components(&self) -> &[Vec<f64>] {
        &self.components
    }

    pub fn explained_variance_ratio(&self) -> Vec<f64> {
        let total: f64 = self.eigenvalues.iter().map(|v| v.max(0.0)).sum();
        self.eigenvalues
            .iter()
            .map(|v| if total > 0.0 { v.max(0.0) / total } else { 0.0 })
            .collect()
    }

    /// Coordinates of every row of `table` on the first two components.
    pub fn project(&self, table: &Table) -> Result<Vec<[f64; 2]>> {
        let cols = table
            .columns()
            .iter()
            .map(|c| {
                c.as_numerical().ok_or_else(|| {
                    EvalError::InvalidInput(format!("column `{}` is not numerical", c.name()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if cols.len() != self.means.len() {
            return Err(EvalError::Schema(
                "projected table has a different column count".into(),
            ));
        }
        Ok((0..table.n_rows())
            .map(|r| {
                let mut out = [0.0; 2];
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = cols
                        .iter()
                        .enumerate()
                        .map(|(j, c)| {
                            (c[r] - self.means[j]) / self.scales[j] * self.components[k][j]
                        })
                        .sum();
                }
                out
            })
            .collect())
    }
}

/// Fits PCA on `fitted_on` and projects `table` onto its top two components.
pub fn pca_project(table: &Table, fitted_on: &Table) -> Result<Vec<[f64; 2]>> {
    PcaModel::fit(fitted_on)?.project(table)
}
