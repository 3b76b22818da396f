//! Utility and privacy metrics.
//!
//! Every metric is a plain function of an [`EvalContext`], its typed options
//! and a seed, returning an [`Outcome`]: either a list of named outputs
//! (plus optional plot payloads) or a reason why it disabled itself.

mod common;
pub mod privacy;
pub mod utility;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use common::{std_error_or_none, DEFAULT_THRESHOLD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    HigherBetter,
    LowerBetter,
    Unranked,
}

impl Direction {
    pub fn is_ranked(self) -> bool {
        self != Direction::Unranked
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Utility,
    Privacy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricOutput {
    pub name: String,
    pub value: f64,
    pub direction: Direction,
    /// Standard error of the mean, when the value is an average.
    pub error: Option<f64>,
}

impl MetricOutput {
    pub fn new(name: impl Into<String>, value: f64, direction: Direction) -> Self {
        MetricOutput {
            name: name.into(),
            value,
            direction,
            error: None,
        }
    }

    pub fn lower(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, value, Direction::LowerBetter)
    }

    pub fn higher(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, value, Direction::HigherBetter)
    }

    pub fn unranked(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, value, Direction::Unranked)
    }

    pub fn with_error(mut self, error: Option<f64>) -> Self {
        self.error = error;
        self
    }
}

/// Outputs of a metric that ran.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub outputs: Vec<MetricOutput>,
    pub payloads: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl Measurement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn output(mut self, output: MetricOutput) -> Self {
        self.outputs.push(output);
        self
    }

    pub fn payload(mut self, name: impl Into<String>, value: Value) -> Self {
        self.payloads.insert(name.into(), value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.outputs
            .iter()
            .find(|o| o.name == name)
            .map(|o| o.value)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Measured(Measurement),
    Disabled(String),
}

impl Outcome {
    pub fn disabled(reason: impl Into<String>) -> Self {
        Outcome::Disabled(reason.into())
    }

    pub fn is_disabled(&self) -> bool {
        matches!(self, Outcome::Disabled(_))
    }

    pub fn measurement(&self) -> Option<&Measurement> {
        match self {
            Outcome::Measured(m) => Some(m),
            Outcome::Disabled(_) => None,
        }
    }

    /// Value of the named output; `None` when absent or disabled.
    pub fn value(&self, name: &str) -> Option<f64> {
        self.measurement().and_then(|m| m.value(name))
    }
}

impl From<Measurement> for Outcome {
    fn from(m: Measurement) -> Self {
        Outcome::Measured(m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum MetricStatus {
    Ok,
    Disabled { reason: String },
    Failed { error: String },
}

/// One metric's entry in an evaluation report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub key: String,
    pub category: Category,
    pub status: MetricStatus,
    pub outputs: Vec<MetricOutput>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub payloads: BTreeMap<String, Value>,
}

impl MetricResult {
    pub fn from_outcome(key: &str, category: Category, outcome: Outcome) -> Self {
        match outcome {
            Outcome::Measured(m) => MetricResult {
                key: key.to_string(),
                category,
                status: MetricStatus::Ok,
                outputs: m.outputs,
                notes: m.notes,
                payloads: m.payloads,
            },
            Outcome::Disabled(reason) => MetricResult {
                key: key.to_string(),
                category,
                status: MetricStatus::Disabled { reason },
                outputs: Vec::new(),
                notes: Vec::new(),
                payloads: BTreeMap::new(),
            },
        }
    }

    pub fn failed(key: &str, category: Category, error: impl std::fmt::Display) -> Self {
        MetricResult {
            key: key.to_string(),
            category,
            status: MetricStatus::Failed {
                error: error.to_string(),
            },
            outputs: Vec::new(),
            notes: Vec::new(),
            payloads: BTreeMap::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == MetricStatus::Ok
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.outputs
            .iter()
            .find(|o| o.name == name)
            .map(|o| o.value)
    }

    pub fn output(&self, name: &str) -> Option<&MetricOutput> {
        self.outputs.iter().find(|o| o.name == name)
    }
}
