//! Utility and privacy evaluation of synthetic tabular data.
//!
//! Inputs are a real table, a synthetic table and an optional holdout
//! table, aligned into an [`EvalContext`]. Metrics are looked up in a
//! [`framework::Registry`] and run through [`framework::evaluate`];
//! several synthetic candidates can be ranked with [`framework::benchmark`].

pub mod dataset;
pub mod distance;
pub mod error;
pub mod framework;
pub mod metrics;
pub mod models;
pub mod seed;
pub mod stats;

pub use dataset::{
    load_csv, load_csv_matching, load_kinds_json, normalize, read_csv, validate_context, Column,
    ColumnData, ColumnKind, EvalContext, FeatureMatrix, NormalizationSpec, Table,
};
pub use distance::{nn_distances, DistanceIndex, DistanceKind, NeighborResult};
pub use error::{EvalError, Result};
pub use framework::{evaluate, resolve_preset, EvalConfig, Registry};
pub use metrics::{Category, Direction, MetricResult};
