//! Metric registry, presets, evaluation and benchmarking.

mod benchmark;
mod config;
mod evaluate;
mod ranking;
mod registry;

pub use benchmark::{benchmark, rank_results, BenchmarkReport, BenchmarkSettings, RankedColumn};
pub use config::{resolve_preset, EvalConfig, FAST_EVAL, PRESETS};
pub use evaluate::evaluate;
pub use ranking::{rank, rank_linear, rank_normal, rank_quantile, Strategy};
pub use registry::{MetricDescriptor, MetricFn, Options, Registry};
