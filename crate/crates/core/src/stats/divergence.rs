use crate::error::{EvalError, Result};

/// Non-negative weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(EvalError::InvalidInput(
                "probabilities must be finite and non-negative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(EvalError::InvalidInput(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(ProbabilityVector(weights))
    }

    /// Relative frequencies of `counts`; an all-zero count vector is rejected.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        let total: usize = counts.iter().sum();
        if total == 0 {
            return Err(EvalError::InsufficientData(
                "cannot normalise empty counts".into(),
            ));
        }
        Ok(ProbabilityVector(
            counts.iter().map(|&c| c as f64 / total as f64).collect(),
        ))
    }

    /// Frequencies of codes `0..n_levels`.
    pub fn from_codes(codes: &[u32], n_levels: usize) -> Result<Self> {
        let mut counts = vec![0usize; n_levels];
        for &c in codes {
            let slot = counts.get_mut(c as usize).ok_or_else(|| {
                EvalError::InvalidInput(format!("code {c} outside {n_levels} levels"))
            })?;
            *slot += 1;
        }
        Self::from_counts(&counts)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn same_support(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<()> {
    if p.len() != q.len() {
        return Err(EvalError::InvalidInput(format!(
            "probability vectors over {} and {} levels",
            p.len(),
            q.len()
        )));
    }
    Ok(())
}

/// Total variation distance, half the L1 distance.
pub fn tvd(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    same_support(p, q)?;
    let l1: f64 = p.0.iter().zip(&q.0).map(|(a, b)| (a - b).abs()).sum();
    Ok((0.5 * l1).clamp(0.0, 1.0))
}

/// TVD between the level frequencies of two code samples.
pub fn tvd_codes(x: &[u32], y: &[u32], n_levels: usize) -> Result<f64> {
    tvd(
        &ProbabilityVector::from_codes(x, n_levels)?,
        &ProbabilityVector::from_codes(y, n_levels)?,
    )
}

/// Discrete Hellinger distance `(1/sqrt 2) * ||sqrt p - sqrt q||_2`.
pub fn hellinger(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    same_support(p, q)?;
    let s: f64 =
        p.0.iter()
            .zip(&q.0)
            .map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2))
            .sum();
    Ok((s.sqrt() / std::f64::consts::SQRT_2).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pv(w: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(w.to_vec()).unwrap()
    }

    #[test]
    fn tvd_examples() {
        assert_eq!(tvd(&pv(&[0.3, 0.7]), &pv(&[0.3, 0.7])).unwrap(), 0.0);
        assert_eq!(tvd(&pv(&[1.0, 0.0]), &pv(&[0.0, 1.0])).unwrap(), 1.0);
        assert_abs_diff_eq!(
            tvd(&pv(&[0.6, 0.4]), &pv(&[0.4, 0.6])).unwrap(),
            0.2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn hellinger_examples() {
        assert_eq!(hellinger(&pv(&[0.5, 0.5]), &pv(&[0.5, 0.5])).unwrap(), 0.0);
        assert_abs_diff_eq!(
            hellinger(&pv(&[1.0, 0.0]), &pv(&[0.0, 1.0])).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let expected = (1.0 - 0.5f64.sqrt()).sqrt();
        assert_abs_diff_eq!(
            hellinger(&pv(&[1.0, 0.0]), &pv(&[0.5, 0.5])).unwrap(),
            expected,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(expected, 0.5412, epsilon = 1e-4);
    }

    #[test]
    fn mismatched_levels_error() {
        assert!(tvd(&pv(&[1.0]), &pv(&[0.5, 0.5])).is_err());
        assert!(hellinger(&pv(&[1.0]), &pv(&[0.5, 0.5])).is_err());
    }

    #[test]
    fn rejects_unnormalised_weights() {
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![-0.5, 1.5]).is_err());
    }
}
