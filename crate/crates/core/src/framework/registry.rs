use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::dataset::EvalContext;
use crate::error::{EvalError, Result};
use crate::metrics::privacy::{
    att_discl, dcr, eps_risk, hit_rate, mia_risk, nnaa_privacy_loss, nndr, AttDisclOptions,
    HitRateOptions, MiaRiskOptions, NnaaLossOptions,
};
use crate::metrics::utility::{
    auroc_diff, cio, cls_acc, corr_diff, dwm, h_dist, ks_test, mi_diff, nnaa, p_mse, pca,
    AurocDiffOptions, CioOptions, ClsAccOptions, CorrDiffOptions, KsTestOptions, NnaaOptions,
    PMseOptions,
};
use crate::metrics::{Category, Direction, Outcome};

/// Option map of one metric, after defaults are merged in.
pub type Options = Map<String, Value>;

pub type MetricFn = dyn Fn(&EvalContext, &Options, u64) -> Result<Outcome> + Send + Sync;
type CheckFn = dyn Fn(&Options) -> Result<()> + Send + Sync;

/// A registered metric: key, category, option defaults, declared outputs
/// and the evaluation function.
#[derive(Clone)]
pub struct MetricDescriptor {
    key: String,
    category: Category,
    defaults: Options,
    outputs: Vec<(String, Direction)>,
    evaluate: Arc<MetricFn>,
    check: Option<Arc<CheckFn>>,
}

impl std::fmt::Debug for MetricDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricDescriptor")
            .field("key", &self.key)
            .field("category", &self.category)
            .field("defaults", &self.defaults)
            .field("outputs", &self.outputs)
            .finish_non_exhaustive()
    }
}

impl MetricDescriptor {
    pub fn new(
        key: impl Into<String>,
        category: Category,
        evaluate: impl Fn(&EvalContext, &Options, u64) -> Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        MetricDescriptor {
            key: key.into(),
            category,
            defaults: Map::new(),
            outputs: Vec::new(),
            evaluate: Arc::new(evaluate),
            check: None,
        }
    }

    /// Descriptor whose options deserialize into `O`; the defaults come from
    /// `O::default()`.
    pub fn typed<O>(
        key: &str,
        category: Category,
        f: fn(&EvalContext, &O, u64) -> Result<Outcome>,
    ) -> Self
    where
        O: Default + Serialize + DeserializeOwned + 'static,
    {
        let defaults = match serde_json::to_value(O::default()) {
            Ok(Value::Object(m)) => m,
            _ => Map::new(),
        };
        let parse = |opts: &Options| -> Result<O> {
            serde_json::from_value(Value::Object(opts.clone()))
                .map_err(|e| EvalError::Config(e.to_string()))
        };
        let mut d = MetricDescriptor::new(key, category, move |ctx, opts, seed| {
            f(ctx, &parse(opts)?, seed)
        });
        d.defaults = defaults;
        d.check = Some(Arc::new(move |opts| parse(opts).map(|_| ())));
        d
    }

    pub fn with_defaults(mut self, defaults: Options) -> Self {
        self.defaults = defaults;
        self
    }

    /// Declares an output; once any output is declared, results are checked
    /// against the declarations.
    pub fn with_output(mut self, name: impl Into<String>, direction: Direction) -> Self {
        self.outputs.push((name.into(), direction));
        self
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn defaults(&self) -> &Options {
        &self.defaults
    }

    pub fn outputs(&self) -> &[(String, Direction)] {
        &self.outputs
    }

    /// Defaults overlaid with `overrides`; unknown option names are rejected.
    pub fn merge_options(&self, overrides: &Options) -> Result<Options> {
        let mut merged = self.defaults.clone();
        for (name, value) in overrides {
            if !self.defaults.contains_key(name) {
                let known: Vec<&str> = self.defaults.keys().map(String::as_str).collect();
                return Err(EvalError::Config(format!(
                    "unknown option `{name}` for metric `{}` (known: {})",
                    self.key,
                    if known.is_empty() {
                        "none".to_string()
                    } else {
                        known.join(", ")
                    }
                )));
            }
            merged.insert(name.clone(), value.clone());
        }
        if let Some(check) = &self.check {
            check(&merged).map_err(|e| EvalError::Config(format!("metric `{}`: {e}", self.key)))?;
        }
        Ok(merged)
    }

    pub fn evaluate(&self, ctx: &EvalContext, options: &Options, seed: u64) -> Result<Outcome> {
        (self.evaluate)(ctx, options, seed)
    }

    fn validate(&self) -> Result<()> {
        let valid_key = !self.key.is_empty()
            && self
                .key
                .chars()
                .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if !valid_key {
            return Err(EvalError::Config(format!(
                "metric key `{}` must be non-empty lowercase letters, digits or underscores",
                self.key
            )));
        }
        for (i, (name, _)) in self.outputs.iter().enumerate() {
            if name.is_empty() || self.outputs[..i].iter().any(|(n, _)| n == name) {
                return Err(EvalError::Config(format!(
                    "metric `{}` declares an empty or duplicate output name `{name}`",
                    self.key
                )));
            }
        }
        Ok(())
    }
}

fn no_options(
    f: fn(&EvalContext) -> Result<Outcome>,
) -> impl Fn(&EvalContext, &Options, u64) -> Result<Outcome> {
    move |ctx, _, _| f(ctx)
}

/// Ordered collection of metric descriptors with unique keys.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    metrics: Vec<MetricDescriptor>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    /// The eighteen built-in metrics.
    pub fn builtin() -> Self {
        use Category::{Privacy, Utility};
        use Direction::{HigherBetter as Hi, LowerBetter as Lo, Unranked as Un};
        let d = |key: &str, f: fn(&EvalContext) -> Result<Outcome>, cat| {
            MetricDescriptor::new(key, cat, no_options(f))
        };
        let metrics = vec![
            d("dwm", dwm, Utility).with_output("avg_dwm_diff", Lo),
            d("pca", pca, Utility)
                .with_output("explained_variance_pc1", Un)
                .with_output("explained_variance_pc2", Un),
            MetricDescriptor::typed::<CioOptions>("cio", Utility, |c, o, _| cio(c, o))
                .with_output("avg_ci_overlap", Hi)
                .with_output("n_non_overlaps", Lo)
                .with_output("frac_non_overlaps", Lo),
            MetricDescriptor::typed::<CorrDiffOptions>("corr_diff", Utility, |c, o, _| {
                corr_diff(c, o)
            })
            .with_output("corr_mat_diff", Lo),
            d("mi_diff", mi_diff, Utility).with_output("mi_mat_diff", Lo),
            MetricDescriptor::typed::<KsTestOptions>("ks_test", Utility, ks_test)
                .with_output("avg_stat", Lo)
                .with_output("avg_pvalue", Un)
                .with_output("avg_ks_stat", Un)
                .with_output("avg_tvd_stat", Un)
                .with_output("n_significant", Lo)
                .with_output("frac_significant", Lo),
            d("h_dist", h_dist, Utility).with_output("avg_hellinger", Lo),
            MetricDescriptor::typed::<PMseOptions>("p_mse", Utility, p_mse)
                .with_output("pmse", Lo)
                .with_output("pmse_acc", Lo),
            MetricDescriptor::typed::<NnaaOptions>("nnaa", Utility, nnaa).with_output("nnaa", Lo),
            MetricDescriptor::typed::<AurocDiffOptions>("auroc_diff", Utility, auroc_diff)
                .with_output("auroc_diff", Lo)
                .with_output("auroc_real", Un)
                .with_output("auroc_synthetic", Un),
            MetricDescriptor::typed::<ClsAccOptions>("cls_acc", Utility, cls_acc)
                .with_output("diff_f1_train", Lo)
                .with_output("diff_f1_test", Lo),
            d("nndr", nndr, Privacy)
                .with_output("mean_nndr", Hi)
                .with_output("nndr_privacy_loss", Lo),
            MetricDescriptor::typed::<NnaaLossOptions>(
                "nnaa_privacy_loss",
                Privacy,
                nnaa_privacy_loss,
            )
            .with_output("nnaa_privacy_loss", Lo)
            .with_output("nnaa_real", Un)
            .with_output("nnaa_holdout", Un),
            d("dcr", dcr, Privacy).with_output("median_dcr", Hi),
            MetricDescriptor::typed::<HitRateOptions>("hit_rate", Privacy, |c, o, _| {
                hit_rate(c, o)
            })
            .with_output("hit_rate", Lo),
            d("eps_risk", eps_risk, Privacy).with_output("eps_identif_risk", Lo),
            MetricDescriptor::typed::<MiaRiskOptions>("mia_risk", Privacy, mia_risk)
                .with_output("mia_macro_f1", Lo)
                .with_output("mia_precision", Lo)
                .with_output("mia_recall", Lo),
            MetricDescriptor::typed::<AttDisclOptions>("att_discl", Privacy, att_discl)
                .with_output("adr_macro_f1", Lo)
                .with_output("adr_precision", Lo)
                .with_output("adr_recall", Lo),
        ];
        Registry { metrics }
    }

    /// Adds a metric; the key must be new and the descriptor well formed.
    pub fn register(&mut self, descriptor: MetricDescriptor) -> Result<()> {
        descriptor.validate()?;
        if self.get(descriptor.key()).is_some() {
            return Err(EvalError::Config(format!(
                "metric `{}` is already registered",
                descriptor.key()
            )));
        }
        self.metrics.push(descriptor);
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&MetricDescriptor> {
        self.metrics.iter().find(|m| m.key == key)
    }

    pub fn keys(&self) -> Vec<&str> {
        self.metrics.iter().map(|m| m.key.as_str()).collect()
    }

    pub fn keys_in(&self, category: Category) -> Vec<&str> {
        self.metrics
            .iter()
            .filter(|m| m.category == category)
            .map(|m| m.key.as_str())
            .collect()
    }

    pub fn descriptors(&self) -> &[MetricDescriptor] {
        &self.metrics
    }
}
