use crate::dataset::{EvalContext, FeatureMatrix, Table};
use crate::distance::DistanceIndex;
use crate::error::Result;
use crate::models::{self, FittedModel, ModelSpec, Target};

/// Default closeness threshold as a fraction of a column's range.
pub const DEFAULT_THRESHOLD: f64 = 1.0 / 30.0;

/// Standard error of the mean, or `None` for fewer than two values.
pub fn std_error_or_none(values: &[f64]) -> Option<f64> {
    (values.len() >= 2).then(|| crate::stats::std_error(values))
}

pub(crate) fn index_over(ctx: &EvalContext, table: &Table) -> Result<DistanceIndex> {
    DistanceIndex::new(table, &ctx.ranges(), ctx.distance())
}

pub(crate) fn all_but(n_cols: usize, skip: Option<usize>) -> Vec<usize> {
    (0..n_cols).filter(|&j| Some(j) != skip).collect()
}

/// Level count of a categorical column in the context's shared universe.
pub(crate) fn n_levels(ctx: &EvalContext, col: usize) -> usize {
    ctx.real().column(col).levels().map_or(0, <[String]>::len)
}

/// A fitted classifier, or a constant vote when the training labels hold a
/// single class.
pub(crate) enum Classifier {
    Fitted(FittedModel),
    Constant { class: u32, n_classes: usize },
}

impl Classifier {
    pub fn fit(
        spec: &ModelSpec,
        x: &FeatureMatrix,
        labels: &[u32],
        n_classes: usize,
    ) -> Result<Self> {
        if let Some(&first) = labels.first() {
            if labels.iter().all(|&y| y == first) {
                return Ok(Classifier::Constant {
                    class: first,
                    n_classes,
                });
            }
        }
        Ok(Classifier::Fitted(models::fit(
            spec,
            x,
            Target::Classes { labels, n_classes },
        )?))
    }

    pub fn predict(&self, x: &FeatureMatrix) -> Result<Vec<u32>> {
        match self {
            Classifier::Fitted(m) => m.predict_classes(x),
            Classifier::Constant { class, .. } => Ok(vec![*class; x.n_rows()]),
        }
    }

    /// Probability of class `c` for each row.
    pub fn proba_of(&self, x: &FeatureMatrix, c: u32) -> Vec<f64> {
        match self {
            Classifier::Fitted(m) => m
                .predict_proba(x)
                .map(|p| {
                    p.iter()
                        .map(|r| r.get(c as usize).copied().unwrap_or(0.0))
                        .collect()
                })
                .unwrap_or_else(|| vec![0.0; x.n_rows()]),
            Classifier::Constant { class, n_classes } => {
                let p = if *n_classes == 0 {
                    0.0
                } else if *class == c {
                    1.0
                } else {
                    0.0
                };
                vec![p; x.n_rows()]
            }
        }
    }
}

pub(crate) fn mean_and_error(values: &[f64]) -> (f64, Option<f64>) {
    (crate::stats::mean(values), std_error_or_none(values))
}
