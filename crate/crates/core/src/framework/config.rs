use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::distance::DistanceKind;
use crate::error::{EvalError, Result};
use crate::metrics::Category;

use super::registry::{Options, Registry};

/// Metrics run by the `fast_eval` preset: those without model training or
/// resampled neighbour searches.
pub const FAST_EVAL: [&str; 8] = [
    "dwm",
    "cio",
    "corr_diff",
    "ks_test",
    "h_dist",
    "hit_rate",
    "dcr",
    "nndr",
];

pub const PRESETS: [&str; 3] = ["full_eval", "fast_eval", "priv_eval"];

/// Which metrics to run with which option overrides, plus optional seed
/// and distance settings.
///
/// JSON form: `{"metrics": {"<key>": {<option>: value}}, "seed": N,
/// "distance": "gower"|"euclidean"}`; `seed` and `distance` may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    pub metrics: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceKind>,
}

impl EvalConfig {
    /// Config running `keys` with default options.
    pub fn with_metrics<S: AsRef<str>>(keys: &[S]) -> Self {
        EvalConfig {
            metrics: keys
                .iter()
                .map(|k| (k.as_ref().to_string(), Value::Object(Map::new())))
                .collect(),
            seed: None,
            distance: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: EvalConfig = serde_json::from_str(text)
            .map_err(|e| EvalError::Config(format!("malformed config: {e}")))?;
        for (key, opts) in &config.metrics {
            if !opts.is_object() {
                return Err(EvalError::Config(format!(
                    "options of metric `{key}` must be a JSON object"
                )));
            }
        }
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| EvalError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Option overrides of one metric.
    pub fn overrides(&self, key: &str) -> Options {
        match self.metrics.get(key) {
            Some(Value::Object(m)) => m.clone(),
            _ => Map::new(),
        }
    }

    pub fn keys(&self) -> Vec<&str> {
        self.metrics.keys().map(String::as_str).collect()
    }

    /// Returns a copy with every metric's options fully spelled out, after
    /// checking keys and options against `registry`.
    pub fn resolved(&self, registry: &Registry) -> Result<EvalConfig> {
        let mut metrics = Map::new();
        for key in self.metrics.keys() {
            let desc = registry
                .get(key)
                .ok_or_else(|| EvalError::Config(format!("unknown metric `{key}`")))?;
            metrics.insert(
                key.clone(),
                Value::Object(desc.merge_options(&self.overrides(key))?),
            );
        }
        Ok(EvalConfig {
            metrics,
            seed: self.seed,
            distance: self.distance,
        })
    }
}

/// Config for a preset name (`full_eval`, `fast_eval`, `priv_eval`) or a
/// path to a JSON config file.
pub fn resolve_preset(name_or_path: &str, registry: &Registry) -> Result<EvalConfig> {
    let config = match name_or_path {
        "full_eval" => EvalConfig::with_metrics(&registry.keys()),
        "fast_eval" => EvalConfig::with_metrics(&FAST_EVAL),
        "priv_eval" => EvalConfig::with_metrics(&registry.keys_in(Category::Privacy)),
        other => {
            let path = Path::new(other);
            if !path.is_file() {
                return Err(EvalError::Config(format!(
                    "`{other}` is neither a preset ({}) nor a readable config file",
                    PRESETS.join(", ")
                )));
            }
            EvalConfig::load(path)?
        }
    };
    config.resolved(registry)?;
    Ok(config)
}
