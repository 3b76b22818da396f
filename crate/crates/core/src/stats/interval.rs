use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{EvalError, Result};

/// Standard normal quantile.
pub fn normal_quantile(p: f64) -> f64 {
    Normal::new(0.0, 1.0).expect("unit normal").inverse_cdf(p)
}

/// Normal-approximation confidence interval of the mean,
/// `mean -/+ z * s / sqrt(n)`, for a confidence given in percent.
pub fn mean_ci(sample: &[f64], confidence: f64) -> Result<(f64, f64)> {
    if sample.len() < 2 {
        return Err(EvalError::InsufficientData(
            "confidence interval needs at least two values".into(),
        ));
    }
    if !(confidence > 0.0 && confidence < 100.0) {
        return Err(EvalError::InvalidInput(format!(
            "confidence {confidence} not in (0, 100)"
        )));
    }
    let z = normal_quantile(1.0 - (1.0 - confidence / 100.0) / 2.0);
    let m = super::mean(sample);
    let half = z * super::std_error(sample);
    Ok((m - half, m + half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_sample_collapses() {
        assert_eq!(mean_ci(&[3.0; 5], 95.0).unwrap(), (3.0, 3.0));
    }

    #[test]
    fn symmetric_around_mean() {
        let (lo, hi) = mean_ci(&[1.0, 2.0, 3.0, 4.0], 90.0).unwrap();
        assert_abs_diff_eq!((lo + hi) / 2.0, 2.5, epsilon = 1e-12);
    }

    #[test]
    fn unit_sd_hundred_samples() {
        // 50 values at -a and 50 at +a with sample sd exactly 1
        let a = (99.0f64 / 100.0).sqrt();
        let mut x = vec![-a; 50];
        x.extend(vec![a; 50]);
        let (lo, hi) = mean_ci(&x, 95.0).unwrap();
        assert_abs_diff_eq!(lo, -0.196, epsilon = 1e-3);
        assert_abs_diff_eq!(hi, 0.196, epsilon = 1e-3);
    }

    #[test]
    fn too_small_sample() {
        assert!(mean_ci(&[1.0], 95.0).is_err());
    }
}
