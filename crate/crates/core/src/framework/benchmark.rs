use serde::{Deserialize, Serialize};

use crate::dataset::{validate_context, Table};
use crate::distance::DistanceKind;
use crate::error::{EvalError, Result};
use crate::metrics::{Category, Direction, MetricResult};

use super::config::EvalConfig;
use super::evaluate::evaluate;
use super::ranking::{rank, Strategy};
use super::registry::Registry;

/// Below this many datasets quartile scores are coarse.
const QUANTILE_MIN_DATASETS: usize = 4;

/// One ranked metric output across all datasets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankedColumn {
    pub metric: String,
    pub output: String,
    pub category: Category,
    pub direction: Direction,
}

impl RankedColumn {
    pub fn label(&self) -> String {
        format!("{}.{}", self.metric, self.output)
    }
}

/// Results of several synthetic candidates against one real table, with
/// per-output scores and unweighted utility, privacy and total sums.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub strategy: Strategy,
    pub datasets: Vec<String>,
    pub results: Vec<Vec<MetricResult>>,
    pub columns: Vec<RankedColumn>,
    /// `raw[d][c]`: value of column `c` for dataset `d`, if it was produced.
    pub raw: Vec<Vec<Option<f64>>>,
    /// `scores[d][c]`: strategy score; 0 where the value is missing.
    pub scores: Vec<Vec<f64>>,
    pub utility: Vec<f64>,
    pub privacy: Vec<f64>,
    pub total: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Inputs of a benchmark run besides the tables.
#[derive(Clone, Debug, Default)]
pub struct BenchmarkSettings<'a> {
    pub target: Option<&'a str>,
    pub seed: u64,
    pub distance: DistanceKind,
    pub strategy: Strategy,
}

/// Evaluates every synthetic candidate under one config and seed, then
/// ranks each directed output across candidates.
pub fn benchmark(
    real: &Table,
    synthetics: &[(String, Table)],
    holdout: Option<&Table>,
    config: &EvalConfig,
    registry: &Registry,
    settings: &BenchmarkSettings<'_>,
) -> Result<BenchmarkReport> {
    if synthetics.len() < 2 {
        return Err(EvalError::InvalidInput(
            "a benchmark needs at least two synthetic datasets".into(),
        ));
    }
    let mut results = Vec::with_capacity(synthetics.len());
    for (name, syn) in synthetics {
        let ctx = validate_context(real.clone(), syn.clone(), holdout.cloned(), settings.target)
            .map_err(|e| EvalError::InvalidInput(format!("dataset `{name}`: {e}")))?
            .with_seed(settings.seed)
            .with_distance(settings.distance);
        results.push(evaluate(&ctx, config, registry)?);
    }
    let datasets = synthetics.iter().map(|(n, _)| n.clone()).collect();
    Ok(rank_results(datasets, results, settings.strategy))
}

/// Ranks already evaluated results; dataset order is preserved.
pub fn rank_results(
    datasets: Vec<String>,
    results: Vec<Vec<MetricResult>>,
    strategy: Strategy,
) -> BenchmarkReport {
    let mut columns: Vec<RankedColumn> = Vec::new();
    for per_dataset in &results {
        for r in per_dataset {
            for out in r.outputs.iter().filter(|o| o.direction.is_ranked()) {
                if !columns
                    .iter()
                    .any(|c| c.metric == r.key && c.output == out.name)
                {
                    columns.push(RankedColumn {
                        metric: r.key.clone(),
                        output: out.name.clone(),
                        category: r.category,
                        direction: out.direction,
                    });
                }
            }
        }
    }
    let n = results.len();
    let raw: Vec<Vec<Option<f64>>> = results
        .iter()
        .map(|per_dataset| {
            columns
                .iter()
                .map(|c| {
                    per_dataset
                        .iter()
                        .find(|r| r.key == c.metric)
                        .and_then(|r| r.value(&c.output))
                })
                .collect()
        })
        .collect();

    let mut scores = vec![vec![0.0; columns.len()]; n];
    for (j, col) in columns.iter().enumerate() {
        let present: Vec<usize> = (0..n).filter(|&d| raw[d][j].is_some()).collect();
        let values: Vec<f64> = present
            .iter()
            .map(|&d| raw[d][j].unwrap_or_default())
            .collect();
        for (&d, s) in present.iter().zip(rank(&values, col.direction, strategy)) {
            scores[d][j] = s;
        }
    }
    let sum_where = |d: usize, cat: Category| -> f64 {
        columns
            .iter()
            .zip(&scores[d])
            .filter(|(c, _)| c.category == cat)
            .map(|(_, s)| s)
            .sum()
    };
    let utility: Vec<f64> = (0..n).map(|d| sum_where(d, Category::Utility)).collect();
    let privacy: Vec<f64> = (0..n).map(|d| sum_where(d, Category::Privacy)).collect();
    let total = utility.iter().zip(&privacy).map(|(u, p)| u + p).collect();

    let mut warnings = Vec::new();
    if strategy == Strategy::Quantile && n < QUANTILE_MIN_DATASETS {
        warnings.push(format!(
            "quantile ranking with {n} datasets is coarse; it is meant for {QUANTILE_MIN_DATASETS} or more"
        ));
    }
    BenchmarkReport {
        strategy,
        datasets,
        results,
        columns,
        raw,
        scores,
        utility,
        privacy,
        total,
        warnings,
    }
}

impl BenchmarkReport {
    fn header(&self) -> Vec<String> {
        let mut h = vec!["dataset".to_string()];
        h.extend(self.columns.iter().map(RankedColumn::label));
        h.extend(["utility", "privacy", "total"].map(String::from));
        h
    }

    fn write_rows<W: std::io::Write>(
        &self,
        out: W,
        cell: impl Fn(usize, usize) -> String,
    ) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for (d, name) in self.datasets.iter().enumerate() {
            let mut row = vec![name.clone()];
            row.extend((0..self.columns.len()).map(|c| cell(d, c)));
            row.extend([self.utility[d], self.privacy[d], self.total[d]].map(|v| v.to_string()));
            w.write_record(row)?;
        }
        w.flush().map_err(|e| EvalError::io("benchmark csv", e))?;
        Ok(())
    }

    /// Raw values per dataset (empty cell when missing) plus rank sums.
    pub fn write_raw_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        self.write_rows(out, |d, c| {
            self.raw[d][c].map(|v| v.to_string()).unwrap_or_default()
        })
    }

    /// Strategy scores per dataset plus rank sums.
    pub fn write_scores_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        self.write_rows(out, |d, c| self.scores[d][c].to_string())
    }
}
