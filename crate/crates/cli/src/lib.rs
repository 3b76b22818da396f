//! Command-line front end: `tabeval evaluate` and `tabeval benchmark`.
//!
//! Both commands load CSV inputs, run a preset or config file through the
//! metric registry and write `report.json`, `report.txt` and
//! `used-config.json` into the output directory. Feeding `used-config.json`
//! back through `--config` reproduces the same `report.json`.

mod error;
pub mod plots;
mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use tabeval::dataset::ColumnKind;
use tabeval::distance::DistanceKind;
use tabeval::framework::{benchmark, BenchmarkSettings, Strategy};
use tabeval::metrics::{MetricResult, MetricStatus};
use tabeval::{
    evaluate, load_csv, load_csv_matching, load_kinds_json, resolve_preset, validate_context,
    EvalConfig, Registry, Table,
};

pub use error::{exit, CliError};
pub use report::{format_measure, render_report, InputDigest, ReportDocument};

/// Environment variable consulted for the seed when neither `--seed` nor
/// the config sets one.
pub const SEED_ENV: &str = "SYNTHEVAL_SEED";

const EXIT_HELP: &str = "\
Exit codes:
  0  success
  1  invalid input: bad flags, schema mismatch, unknown metric or option
  2  i/o error reading inputs or writing outputs
  3  at least one metric failed; all other results are still written

Seed precedence: --seed, then the config's \"seed\", then $SYNTHEVAL_SEED, then 0.";

#[derive(Debug, Parser)]
#[command(name = "tabeval", version, about = "Evaluate synthetic tabular data against real data", after_help = EXIT_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one synthetic table.
    Evaluate(EvaluateArgs),
    /// Evaluate and rank several synthetic tables.
    Benchmark(BenchmarkArgs),
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// Real (training) data CSV.
    #[arg(long)]
    pub real: PathBuf,
    /// Real data withheld from generator training.
    #[arg(long)]
    pub holdout: Option<PathBuf>,
    /// Categorical target column for model-based metrics.
    #[arg(long)]
    pub target: Option<String>,
    /// full_eval, fast_eval or priv_eval (default full_eval).
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// JSON config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Master seed; overrides the config and $SYNTHEVAL_SEED
    #[arg(long)]
    pub seed: Option<u64>,
    /// Record distance for neighbour-based metrics (default gower)
    #[arg(long, value_parser = ["gower", "euclidean"])]
    pub distance: Option<String>,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// JSON map of column name to "num" or "cat".
    #[arg(long)]
    pub kinds: Option<PathBuf>,
    /// Also render plot payloads as SVG.
    #[arg(long)]
    pub plots: bool,
    /// Record the run time in report.json (makes reports differ between runs).
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Clone, Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Synthetic data CSV.
    #[arg(long)]
    pub synthetic: PathBuf,
}

#[derive(Clone, Debug, Args)]
pub struct BenchmarkArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Synthetic candidate as NAME=PATH; repeat for each candidate.
    #[arg(long = "synthetic", value_parser = parse_named, required = true)]
    pub synthetics: Vec<(String, PathBuf)>,
    #[arg(long, default_value = "linear", value_parser = ["linear", "normal", "quantile"])]
    pub strategy: String,
}

fn parse_named(s: &str) -> Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => {
            Ok((name.to_string(), PathBuf::from(path)))
        }
        _ => Err(format!("expected NAME=PATH, got `{s}`")),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    exit::OK
                }
                _ => exit::INVALID,
            };
        }
    };
    let outcome = match &cli.command {
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Benchmark(args) => cmd_benchmark(args),
    };
    match outcome {
        Ok(doc) => {
            let failed: Vec<&MetricResult> = doc
                .all_results()
                .filter(|r| matches!(r.status, MetricStatus::Failed { .. }))
                .collect();
            for r in &failed {
                if let MetricStatus::Failed { error } = &r.status {
                    eprintln!("metric {} failed: {error}", r.key);
                }
            }
            if failed.is_empty() {
                exit::OK
            } else {
                exit::METRIC_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Loaded {
    registry: Registry,
    config: EvalConfig,
    real: Table,
    holdout: Option<Table>,
    kinds: BTreeMap<String, ColumnKind>,
    inputs: Vec<InputDigest>,
}

fn seed_from_env() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| {
                CliError::Usage(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))
            })
        }
        Err(_) => Ok(None),
    }
}

/// Loads config and real/holdout tables, and fixes seed and distance in the
/// resolved config.
fn load_common(common: &CommonArgs) -> Result<Loaded, CliError> {
    let registry = Registry::builtin();
    let base = match (&common.config, &common.preset) {
        (Some(path), _) => EvalConfig::load(path)?,
        (None, Some(name)) => resolve_preset(name, &registry)?,
        (None, None) => resolve_preset("full_eval", &registry)?,
    };
    let mut config = base.resolved(&registry)?;
    config.seed = Some(match (common.seed, base.seed) {
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => seed_from_env()?.unwrap_or(0),
    });
    let flag_distance = common
        .distance
        .as_deref()
        .map(str::parse::<DistanceKind>)
        .transpose()?;
    config.distance = Some(flag_distance.or(base.distance).unwrap_or_default());

    let declared = common.kinds.as_deref().map(load_kinds_json).transpose()?;
    let real = load_csv(&common.real, declared.as_ref())?;
    let kinds: BTreeMap<String, ColumnKind> = real
        .names()
        .into_iter()
        .map(str::to_string)
        .zip(real.kinds())
        .collect();
    let mut inputs = vec![InputDigest::of_file("real", &common.real)?];
    let holdout = match &common.holdout {
        Some(path) => {
            inputs.push(InputDigest::of_file("holdout", path)?);
            Some(load_csv_matching(path, &kinds)?)
        }
        None => None,
    };
    Ok(Loaded {
        registry,
        config,
        real,
        holdout,
        kinds,
        inputs,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn create_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Moves plot payloads out of `results` into `dir` as JSON, plus SVG when
/// requested.
fn write_payloads(results: &mut [MetricResult], dir: &Path, svg: bool) -> Result<(), CliError> {
    if results.iter().all(|r| r.payloads.is_empty()) {
        return Ok(());
    }
    create_dir(dir)?;
    for r in results.iter_mut() {
        for (name, payload) in std::mem::take(&mut r.payloads) {
            let stem = format!("{}_{name}", r.key);
            let json = serde_json::to_string_pretty(&payload).expect("payload serializes");
            write_file(&dir.join(format!("{stem}.json")), &json)?;
            if svg {
                if let Some(image) = plots::render_svg(&r.key, &name, &payload) {
                    write_file(&dir.join(format!("{stem}.svg")), &image)?;
                }
            }
        }
    }
    Ok(())
}

fn finish(mut doc: ReportDocument, common: &CommonArgs) -> Result<ReportDocument, CliError> {
    if common.timestamp {
        doc.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }
    write_file(&common.out.join("report.json"), &doc.to_json())?;
    write_file(&common.out.join("report.txt"), &render_report(&doc))?;
    let mut used = doc.config.to_json();
    used.push('\n');
    write_file(&common.out.join("used-config.json"), &used)?;
    Ok(doc)
}

/// Runs `evaluate` and writes its files; the returned document is what
/// `report.json` holds.
pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<ReportDocument, CliError> {
    let common = &args.common;
    let loaded = load_common(common)?;
    let synthetic = load_csv_matching(&args.synthetic, &loaded.kinds)?;
    let mut inputs = loaded.inputs;
    inputs.insert(1, InputDigest::of_file("synthetic", &args.synthetic)?);

    let ctx = validate_context(
        loaded.real,
        synthetic,
        loaded.holdout,
        common.target.as_deref(),
    )?
    .with_seed(loaded.config.seed.unwrap_or_default())
    .with_distance(loaded.config.distance.unwrap_or_default());
    let mut results = evaluate(&ctx, &loaded.config, &loaded.registry)?;

    create_dir(&common.out)?;
    write_payloads(&mut results, &common.out.join("plots"), common.plots)?;
    let mut doc = ReportDocument::new("evaluate", inputs, common.target.clone(), loaded.config);
    doc.results = results;
    finish(doc, common)
}

/// Runs `benchmark` and writes its files, including the raw and score CSVs.
pub fn cmd_benchmark(args: &BenchmarkArgs) -> Result<ReportDocument, CliError> {
    let common = &args.common;
    if args.synthetics.len() < 2 {
        return Err(CliError::Usage(
            "a benchmark needs at least two --synthetic NAME=PATH".into(),
        ));
    }
    for (i, (name, _)) in args.synthetics.iter().enumerate() {
        if args.synthetics[..i].iter().any(|(n, _)| n == name) {
            return Err(CliError::Usage(format!(
                "dataset name `{name}` given twice"
            )));
        }
    }
    let strategy: Strategy = args.strategy.parse()?;
    let loaded = load_common(common)?;
    let mut inputs = loaded.inputs;
    let mut synthetics = Vec::with_capacity(args.synthetics.len());
    for (name, path) in &args.synthetics {
        inputs.push(InputDigest::of_file(format!("synthetic:{name}"), path)?);
        synthetics.push((name.clone(), load_csv_matching(path, &loaded.kinds)?));
    }
    let settings = BenchmarkSettings {
        target: common.target.as_deref(),
        seed: loaded.config.seed.unwrap_or_default(),
        distance: loaded.config.distance.unwrap_or_default(),
        strategy,
    };
    let mut report = benchmark(
        &loaded.real,
        &synthetics,
        loaded.holdout.as_ref(),
        &loaded.config,
        &loaded.registry,
        &settings,
    )?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }

    create_dir(&common.out)?;
    for (name, results) in report.datasets.iter().zip(report.results.iter_mut()) {
        write_payloads(results, &common.out.join("plots").join(name), common.plots)?;
    }
    let csv_path = |file: &str| common.out.join(file);
    let mut raw = Vec::new();
    report.write_raw_csv(&mut raw)?;
    write_file(
        &csv_path("benchmark_raw.csv"),
        &String::from_utf8_lossy(&raw),
    )?;
    let mut scores = Vec::new();
    report.write_scores_csv(&mut scores)?;
    write_file(
        &csv_path("benchmark_scores.csv"),
        &String::from_utf8_lossy(&scores),
    )?;

    let mut doc = ReportDocument::new("benchmark", inputs, common.target.clone(), loaded.config);
    doc.benchmark = Some(report);
    finish(doc, common)
}
