use crate::error::{EvalError, Result};

/// Equal-width bins over `[min, max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bins {
    min: f64,
    max: f64,
    n_bins: usize,
}

impl Bins {
    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn width(&self) -> f64 {
        (self.max - self.min) / self.n_bins as f64
    }

    pub fn edges(&self) -> Vec<f64> {
        let w = self.width();
        (0..=self.n_bins)
            .map(|i| {
                if i == self.n_bins {
                    self.max
                } else {
                    self.min + i as f64 * w
                }
            })
            .collect()
    }

    /// Bin index of `v`; values outside the span land in the end bins.
    pub fn assign(&self, v: f64) -> u32 {
        if self.n_bins <= 1 || self.max <= self.min {
            return 0;
        }
        let pos = ((v - self.min) / (self.max - self.min) * self.n_bins as f64).floor();
        pos.clamp(0.0, (self.n_bins - 1) as f64) as u32
    }
}

/// Scott's normal reference bin width, `3.49 s / n^(1/3)`.
pub fn scott_width(s: f64, n: usize) -> f64 {
    3.49 * s / (n as f64).cbrt()
}

/// Number of Scott-width bins needed to cover `range` (at least one).
pub fn scott_bin_count(range: f64, s: f64, n: usize) -> usize {
    let width = scott_width(s, n);
    // also catches NaN
    let positive = |v: f64| v > 0.0;
    if !positive(width) || !positive(range) {
        return 1;
    }
    // shave rounding noise so an exact multiple of the width is not rounded up
    let bins = (range / width * (1.0 - 1e-12)).ceil();
    (bins as usize).max(1)
}

/// Scott's-rule bins spanning the sample; a constant sample gets one bin.
pub fn scott_bins(sample: &[f64]) -> Result<Bins> {
    if sample.len() < 2 {
        return Err(EvalError::InsufficientData(
            "binning needs at least two values".into(),
        ));
    }
    let min = sample.iter().copied().fold(f64::INFINITY, f64::min);
    let max = sample.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let s = super::std_dev(sample);
    Ok(Bins {
        min,
        max,
        n_bins: scott_bin_count(max - min, s, sample.len()),
    })
}

fn bins_or_single(sample: &[f64]) -> Bins {
    scott_bins(sample).unwrap_or(Bins {
        min: 0.0,
        max: 0.0,
        n_bins: 1,
    })
}

/// Bin codes of a sample under its own Scott bins, and the bin count.
pub fn discretize(sample: &[f64]) -> (Vec<u32>, usize) {
    let bins = bins_or_single(sample);
    (
        sample.iter().map(|&v| bins.assign(v)).collect(),
        bins.n_bins,
    )
}

/// Bin codes of two samples under Scott bins of their union, so both share
/// one bin universe.
pub fn discretize_pair(x: &[f64], y: &[f64]) -> (Vec<u32>, Vec<u32>, usize) {
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let bins = bins_or_single(&pooled);
    (
        x.iter().map(|&v| bins.assign(v)).collect(),
        y.iter().map(|&v| bins.assign(v)).collect(),
        bins.n_bins,
    )
}
