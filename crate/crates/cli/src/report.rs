use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tabeval::framework::BenchmarkReport;
use tabeval::metrics::{Category, Direction, MetricResult, MetricStatus};
use tabeval::{EvalConfig, EvalError};

/// One input file and the SHA-256 of its bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_file(role: impl Into<String>, path: &Path) -> Result<Self, EvalError> {
        let bytes = std::fs::read(path).map_err(|source| EvalError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(InputDigest {
            role: role.into(),
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        })
    }
}

/// Everything a run produced, as written to `report.json`.
///
/// `report.txt` is rendered from this document alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    #[serde(default)]
    pub target: Option<String>,
    /// Resolved config: every option spelled out, seed and distance set.
    pub config: EvalConfig,
    #[serde(default)]
    pub results: Vec<MetricResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<BenchmarkReport>,
    /// Seconds since the Unix epoch; only present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl ReportDocument {
    pub fn new(
        command: &str,
        inputs: Vec<InputDigest>,
        target: Option<String>,
        config: EvalConfig,
    ) -> Self {
        ReportDocument {
            tool: "tabeval".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            target,
            config,
            results: Vec::new(),
            benchmark: None,
            timestamp: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, EvalError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Every metric result in the document, benchmark ones included.
    pub fn all_results(&self) -> impl Iterator<Item = &MetricResult> {
        self.results.iter().chain(
            self.benchmark
                .iter()
                .flat_map(|b| b.results.iter().flatten()),
        )
    }

    pub fn has_failures(&self) -> bool {
        self.all_results()
            .any(|r| matches!(r.status, MetricStatus::Failed { .. }))
    }
}

fn round_at(value: f64, place: i32) -> f64 {
    let scale = 10f64.powi(place);
    let r = (value / scale).round() * scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn fixed(value: f64, place: i32) -> String {
    format!("{:.*}", (-place).max(0) as usize, round_at(value, place))
}

/// Decimal place of the second significant digit of `x > 0`, adjusted when
/// rounding carries into a third digit.
fn second_digit_place(x: f64) -> i32 {
    let place = x.log10().floor() as i32 - 1;
    if (x / 10f64.powi(place)).round() >= 100.0 {
        place + 1
    } else {
        place
    }
}

/// Two significant figures, or with a standard error: the value rounded to
/// the error's second significant digit followed by those two digits in
/// parentheses, e.g. `0.036(11)`.
pub fn format_measure(value: f64, error: Option<f64>) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    match error.filter(|e| e.is_finite() && *e > 0.0) {
        Some(err) => {
            let place = second_digit_place(err);
            let digits = round_at(err, place);
            let err_text = if place <= 0 {
                format!("{:.0}", digits / 10f64.powi(place))
            } else {
                format!("{digits:.0}")
            };
            format!("{}({err_text})", fixed(value, place))
        }
        None if value == 0.0 => "0".to_string(),
        None => fixed(value, second_digit_place(value.abs())),
    }
}

fn direction_mark(d: Direction) -> &'static str {
    match d {
        Direction::HigherBetter => "higher",
        Direction::LowerBetter => "lower",
        Direction::Unranked => "",
    }
}

fn render_results(out: &mut String, results: &[MetricResult]) {
    for (category, title) in [
        (Category::Utility, "Utility"),
        (Category::Privacy, "Privacy"),
    ] {
        let group: Vec<&MetricResult> = results.iter().filter(|r| r.category == category).collect();
        if group.is_empty() {
            continue;
        }
        let _ = writeln!(out, "\n{title} metrics");
        let _ = writeln!(
            out,
            "  {:<18} {:<22} {:>14}  better",
            "metric", "output", "value"
        );
        for r in group {
            match &r.status {
                MetricStatus::Ok => {
                    for o in &r.outputs {
                        let _ = writeln!(
                            out,
                            "  {:<18} {:<22} {:>14}  {}",
                            r.key,
                            o.name,
                            format_measure(o.value, o.error),
                            direction_mark(o.direction)
                        );
                    }
                }
                MetricStatus::Disabled { reason } => {
                    let _ = writeln!(out, "  {}: disabled ({reason})", r.key);
                }
                MetricStatus::Failed { error } => {
                    let _ = writeln!(out, "  {}: failed ({error})", r.key);
                }
            }
            for note in &r.notes {
                let _ = writeln!(out, "    note: {note}");
            }
        }
    }
}

fn render_benchmark(out: &mut String, b: &BenchmarkReport) {
    let strategy = serde_json::to_value(b.strategy)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let _ = writeln!(out, "\nRanking ({strategy})");
    let _ = writeln!(
        out,
        "  {:<20} {:>10} {:>10} {:>10}",
        "dataset", "utility", "privacy", "total"
    );
    for (d, name) in b.datasets.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:<20} {:>10} {:>10} {:>10}",
            name,
            format_measure(b.utility[d], None),
            format_measure(b.privacy[d], None),
            format_measure(b.total[d], None)
        );
    }
    for w in &b.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
    for (name, results) in b.datasets.iter().zip(&b.results) {
        let _ = writeln!(out, "\nDataset {name}");
        render_results(out, results);
    }
}

/// Fixed-width text view of a report, grouped into utility and privacy.
pub fn render_report(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", doc.tool, doc.version, doc.command);
    let seed = doc
        .config
        .seed
        .map_or_else(|| "-".to_string(), |s| s.to_string());
    let distance = doc
        .config
        .distance
        .and_then(|d| serde_json::to_value(d).ok())
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_else(|| "-".to_string());
    let _ = writeln!(
        out,
        "seed: {seed}  distance: {distance}  target: {}",
        doc.target.as_deref().unwrap_or("-")
    );
    for input in &doc.inputs {
        let _ = writeln!(
            out,
            "  {:<12} {}  sha256 {}",
            input.role, input.path, input.sha256
        );
    }
    render_results(&mut out, &doc.results);
    if let Some(b) = &doc.benchmark {
        render_benchmark(&mut out, b);
    }
    out
}
