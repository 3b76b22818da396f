//! Multinomial logistic regression fitted by batch gradient descent on the
//! L2-regularised mean log-loss, over standardised features.

use crate::dataset::FeatureMatrix;
use crate::error::Result;

use super::Hyperparameters;

#[derive(Clone, Debug)]
pub struct LogisticRegression {
    means: Vec<f64>,
    scales: Vec<f64>,
    n_classes: usize,
    /// `n_classes x (n_features + 1)`, bias last.
    params: Vec<f64>,
    iterations: usize,
}

/// Standardises `x` with the given moments and appends a bias column.
fn design(x: &FeatureMatrix, means: &[f64], scales: &[f64]) -> Vec<f64> {
    let d = x.n_cols();
    let mut out = Vec::with_capacity(x.n_rows() * (d + 1));
    for row in x.rows() {
        for j in 0..d {
            out.push((row[j] - means[j]) / scales[j]);
        }
        out.push(1.0);
    }
    out
}

fn softmax_row(params: &[f64], row: &[f64], k: usize, out: &mut [f64]) {
    let width = row.len();
    let mut max = f64::NEG_INFINITY;
    for c in 0..k {
        let w = &params[c * width..(c + 1) * width];
        let z: f64 = w.iter().zip(row).map(|(a, b)| a * b).sum();
        out[c] = z;
        max = max.max(z);
    }
    let mut total = 0.0;
    for v in out.iter_mut().take(k) {
        *v = (*v - max).exp();
        total += *v;
    }
    for v in out.iter_mut().take(k) {
        *v /= total;
    }
}

/// Mean log-loss plus `lambda / 2 * ||W||^2` (bias excluded) and its
/// gradient, for a design matrix with the bias as last column.
pub fn log_loss_and_gradient(
    params: &[f64],
    design: &[f64],
    labels: &[u32],
    n_classes: usize,
    lambda: f64,
) -> (f64, Vec<f64>) {
    let n = labels.len();
    let width = params.len() / n_classes;
    let mut grad = vec![0.0; params.len()];
    let mut probs = vec![0.0; n_classes];
    let mut loss = 0.0;
    for (i, &y) in labels.iter().enumerate() {
        let row = &design[i * width..(i + 1) * width];
        softmax_row(params, row, n_classes, &mut probs);
        loss -= probs[y as usize].max(1e-300).ln();
        for c in 0..n_classes {
            let r = probs[c] - if c == y as usize { 1.0 } else { 0.0 };
            let g = &mut grad[c * width..(c + 1) * width];
            for (gj, xj) in g.iter_mut().zip(row) {
                *gj += r * xj;
            }
        }
    }
    let nf = n.max(1) as f64;
    loss /= nf;
    for c in 0..n_classes {
        for j in 0..width {
            let idx = c * width + j;
            grad[idx] /= nf;
            if j + 1 < width {
                loss += 0.5 * lambda * params[idx] * params[idx];
                grad[idx] += lambda * params[idx];
            }
        }
    }
    (loss, grad)
}

impl LogisticRegression {
    pub fn fit(
        x: &FeatureMatrix,
        labels: &[u32],
        n_classes: usize,
        hp: &Hyperparameters,
    ) -> Result<Self> {
        let d = x.n_cols();
        let n = x.n_rows();
        let mut means = vec![0.0; d];
        let mut scales = vec![1.0; d];
        for j in 0..d {
            let col = x.column(j);
            means[j] = crate::stats::mean(&col);
            let sd =
                (col.iter().map(|v| (v - means[j]).powi(2)).sum::<f64>() / n.max(1) as f64).sqrt();
            if sd > 0.0 {
                scales[j] = sd;
            }
        }
        let z = design(x, &means, &scales);
        let lambda = hp.l2.unwrap_or(1.0 / n.max(1) as f64);
        let mut params = vec![0.0; n_classes * (d + 1)];
        let mut iterations = 0;
        for _ in 0..hp.max_iter {
            let (_, grad) = log_loss_and_gradient(&params, &z, labels, n_classes, lambda);
            iterations += 1;
            let gmax = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
            if gmax < hp.tol {
                break;
            }
            for (p, g) in params.iter_mut().zip(&grad) {
                *p -= hp.learning_rate * g;
            }
        }
        Ok(LogisticRegression {
            means,
            scales,
            n_classes,
            params,
            iterations,
        })
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn predict_proba(&self, x: &FeatureMatrix) -> Vec<Vec<f64>> {
        let z = design(x, &self.means, &self.scales);
        let width = x.n_cols() + 1;
        z.chunks(width)
            .map(|row| {
                let mut p = vec![0.0; self.n_classes];
                softmax_row(&self.params, row, self.n_classes, &mut p);
                p
            })
            .collect()
    }
}
