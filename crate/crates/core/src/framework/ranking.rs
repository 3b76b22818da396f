use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};
use crate::metrics::Direction;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Min-max scaling: best 1, worst 0.
    #[default]
    Linear,
    /// Best 1, worst 0, everything else 0.5.
    Normal,
    /// Quartiles scored 3 (best) down to 0.
    Quantile,
}

impl std::str::FromStr for Strategy {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Strategy::Linear),
            "normal" => Ok(Strategy::Normal),
            "quantile" => Ok(Strategy::Quantile),
            other => Err(EvalError::Config(format!(
                "unknown ranking strategy `{other}` (linear, normal, quantile)"
            ))),
        }
    }
}

/// Values flipped so that larger is always better; `None` when unranked.
fn oriented(values: &[f64], direction: Direction) -> Option<Vec<f64>> {
    match direction {
        Direction::HigherBetter => Some(values.to_vec()),
        Direction::LowerBetter => Some(values.iter().map(|v| -v).collect()),
        Direction::Unranked => None,
    }
}

fn extremes(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// Min-max scores: best 1, worst 0, linear in between; all-equal values
/// score 0.5. Unranked values score 0.
pub fn rank_linear(values: &[f64], direction: Direction) -> Vec<f64> {
    let Some(v) = oriented(values, direction) else {
        return vec![0.0; values.len()];
    };
    let (lo, hi) = extremes(&v);
    if hi <= lo {
        return vec![0.5; v.len()];
    }
    v.iter().map(|x| (x - lo) / (hi - lo)).collect()
}

/// Best (ties included) 1, worst 0, everything else 0.5; all-equal values
/// score 0.5. Unranked values score 0.
pub fn rank_normal(values: &[f64], direction: Direction) -> Vec<f64> {
    let Some(v) = oriented(values, direction) else {
        return vec![0.0; values.len()];
    };
    let (lo, hi) = extremes(&v);
    if hi <= lo {
        return vec![0.5; v.len()];
    }
    v.iter()
        .map(|&x| {
            if x == hi {
                1.0
            } else if x == lo {
                0.0
            } else {
                0.5
            }
        })
        .collect()
}

/// Quartile scores in {0, 1, 2, 3}: a value beaten by `b` of the `n` values
/// scores `3 - floor(4 b / n)`, so ties share the better quartile.
/// Unranked values score 0.
pub fn rank_quantile(values: &[f64], direction: Direction) -> Vec<f64> {
    let Some(v) = oriented(values, direction) else {
        return vec![0.0; values.len()];
    };
    let n = v.len();
    v.iter()
        .map(|&x| {
            let better = v.iter().filter(|&&y| y > x).count();
            (3 - (4 * better / n).min(3)) as f64
        })
        .collect()
}

pub fn rank(values: &[f64], direction: Direction, strategy: Strategy) -> Vec<f64> {
    match strategy {
        Strategy::Linear => rank_linear(values, direction),
        Strategy::Normal => rank_normal(values, direction),
        Strategy::Quantile => rank_quantile(values, direction),
    }
}
