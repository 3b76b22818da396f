//! Statistical primitives shared by the metrics.

mod association;
mod binning;
mod divergence;
mod interval;
mod ks;
mod pca;
mod permutation;

pub use association::{
    correlation_ratio, cramers_v, entropy, frobenius_diff, mixed_correlation_matrix,
    mutual_information, nmi_matrix, normalized_mutual_information, pearson_corr, MatrixSummary,
};
pub use binning::{discretize, discretize_pair, scott_bin_count, scott_bins, scott_width, Bins};
pub use divergence::{hellinger, tvd, tvd_codes, ProbabilityVector};
pub use interval::{mean_ci, normal_quantile};
pub use ks::{kolmogorov_survival, ks_pvalue, ks_statistic, ks_test};
pub use pca::{pca_project, symmetric_eigen, PcaModel};
pub use permutation::{permutation_pvalue, tvd_permutation_pvalue};

pub fn mean(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    x.iter().sum::<f64>() / x.len() as f64
}

/// Sample variance (n - 1 denominator); 0 for fewer than two values.
pub fn variance(x: &[f64]) -> f64 {
    if x.len() < 2 {
        return 0.0;
    }
    let m = mean(x);
    x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (x.len() - 1) as f64
}

pub fn std_dev(x: &[f64]) -> f64 {
    variance(x).sqrt()
}

/// Standard error of the mean; 0 for fewer than two values.
pub fn std_error(x: &[f64]) -> f64 {
    if x.len() < 2 {
        return 0.0;
    }
    std_dev(x) / (x.len() as f64).sqrt()
}

/// Median of a non-empty sample (mean of the middle pair for even sizes).
pub fn median(x: &[f64]) -> f64 {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
