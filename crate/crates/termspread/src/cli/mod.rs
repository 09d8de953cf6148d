//! Command-line interface: `fit`, `probit`, `spread`, and `generate`.
//!
//! Every command takes its settings from flags, from a `--config` file with
//! `key = value` lines (keys named after the long flags), or from built-in
//! defaults, in that order of precedence. Results go to standard output as
//! short tables rounded to four decimals; machine-readable files written to
//! `--out-dir` carry full double precision.
//!
//! Exit codes: 0 success; 2 input problems (I/O, parsing, invalid values);
//! 3 alignment problems (series that share no quarters, missing series);
//! 4 estimation problems (singular systems, non-convergence, degenerate
//! data).

pub mod config;
pub mod output;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::estimators::{ProbitFit, RegressionFit};
use crate::evaluate::{
    in_sample_forecast, recession_classification, rolling_oos_forecast, ClassificationMetrics,
    ForecastReport, Scheme,
};
use crate::ingest::{load_dataset, parse_quarter, SeriesFileSpec};
use crate::models::{
    classify_curve, compute_spread, fit_growth_model, fit_recession_probit, GrowthModelKind,
    GrowthModelSpec, ProbitModelSpec, SpreadSpec,
};
use crate::series::{pct_growth, Dataset, Unit};
use crate::synthgen::{generate, RecessionRule, ScenarioSpec, SpreadProcess};
use config::{merge, ConfigFile};
use output::{
    csv_table, fmt_human, fmt_machine, json_number, json_to_string, series_csv, write_atomic,
};

const LONG_SERIES: &str = "long_yield";
const SHORT_SERIES: &str = "short_yield";
const GDP_SERIES: &str = "gdp";
const RECESSION_SERIES: &str = "recession";

/// Term-spread models of GDP growth and recession risk.
#[derive(Debug, Parser)]
#[command(name = "termspread", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regress GDP growth on the yield spread; write actual vs predicted.
    Fit(FitArgs),
    /// Fit a recession probit on the spread; write predicted probabilities.
    Probit(ProbitArgs),
    /// Compute the spread with curve classifications.
    Spread(SpreadArgs),
    /// Write a synthetic scenario as CSV files in the ingest format.
    Generate(GenerateArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Fit(_) => "fit",
            Command::Probit(_) => "probit",
            Command::Spread(_) => "spread",
            Command::Generate(_) => "generate",
        }
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Flat key = value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// GDP level CSV (columns date,value).
    #[arg(long)]
    gdp: Option<PathBuf>,
    /// Long-yield CSV (columns date,value), percent per annum.
    #[arg(long)]
    long: Option<PathBuf>,
    /// Short-yield CSV (columns date,value), percent per annum.
    #[arg(long)]
    short: Option<PathBuf>,
    /// Model kind: haubrich_pct | harvey_window | dotsey_log | turkish_next.
    #[arg(long)]
    model: Option<String>,
    /// Growth horizon in quarters (default 4).
    #[arg(long)]
    horizon: Option<u32>,
    /// First rolling forecast origin (row count); enables rolling
    /// out-of-sample evaluation. Without it the forecast is in-sample.
    #[arg(long)]
    min_train: Option<usize>,
    /// Directory for output files (default current directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Forecast file format: csv | json (default csv).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
pub struct ProbitArgs {
    /// Flat key = value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Long-yield CSV (columns date,value), percent per annum.
    #[arg(long)]
    long: Option<PathBuf>,
    /// Short-yield CSV (columns date,value), percent per annum.
    #[arg(long)]
    short: Option<PathBuf>,
    /// Recession indicator CSV (columns date,value with 0/1 values).
    #[arg(long)]
    recession: Option<PathBuf>,
    /// Quarters ahead at which recession is predicted (default 4, max 8).
    #[arg(long)]
    lead: Option<u32>,
    /// Probability threshold for classification metrics (default 0.5).
    #[arg(long)]
    threshold: Option<f64>,
    /// Directory for output files (default current directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Probability file format: csv | json (default csv).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpreadArgs {
    /// Flat key = value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Long-yield CSV (columns date,value), percent per annum.
    #[arg(long)]
    long: Option<PathBuf>,
    /// Short-yield CSV (columns date,value), percent per annum.
    #[arg(long)]
    short: Option<PathBuf>,
    /// Optional GDP level CSV; adds a realized-growth column.
    #[arg(long)]
    gdp: Option<PathBuf>,
    /// Half-width of the flat band in percentage points (default 0.25).
    #[arg(long)]
    band: Option<f64>,
    /// Growth horizon in quarters for the growth column (default 4).
    #[arg(long)]
    horizon: Option<u32>,
    /// Directory for output files (default current directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Spread file format: csv | json (default csv).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Flat key = value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Random seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output length in quarters (minimum 16).
    #[arg(long)]
    n_quarters: Option<usize>,
    /// First output quarter, e.g. 1990Q1.
    #[arg(long)]
    start: Option<String>,
    /// Growth intercept, percent.
    #[arg(long)]
    true_a: Option<f64>,
    /// Spread-to-growth slope, percent growth per percentage point.
    #[arg(long)]
    true_b: Option<f64>,
    /// Growth noise standard deviation, percent.
    #[arg(long)]
    noise_sigma: Option<f64>,
    /// Unconditional spread mean, percentage points.
    #[arg(long)]
    spread_mean: Option<f64>,
    /// Spread AR(1) coefficient, in [0, 1).
    #[arg(long)]
    persistence: Option<f64>,
    /// Spread innovation standard deviation, percentage points.
    #[arg(long)]
    shock_sigma: Option<f64>,
    /// Recession trigger: recession when the lagged spread is below this.
    #[arg(long)]
    trigger: Option<f64>,
    /// Quarters between the driving spread and the recession label (max 8).
    #[arg(long)]
    rec_lead: Option<u32>,
    /// Independent label-flip probability, in [0, 0.5).
    #[arg(long)]
    flip_prob: Option<f64>,
    /// Directory for output files (default current directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Parse the process arguments, run the selected command, and return the
/// process exit code. Errors are printed to standard error, prefixed with the
/// command name.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let name = cli.command.name();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("termspread {name}: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Fit(args) => cmd_fit(args),
        Command::Probit(args) => cmd_probit(args),
        Command::Spread(args) => cmd_spread(args),
        Command::Generate(args) => cmd_generate(args),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Validation {
                msg: format!("unknown output format '{other}' (expected csv or json)"),
            }),
        }
    }
}

fn load_config(flag: &Option<PathBuf>) -> Result<ConfigFile> {
    match flag {
        Some(path) => ConfigFile::load(path),
        None => Ok(ConfigFile::empty()),
    }
}

fn require_path(value: Option<PathBuf>, flag: &str) -> Result<PathBuf> {
    value.ok_or_else(|| Error::Validation {
        msg: format!("missing input file: provide --{flag} or '{flag}' in the config file"),
    })
}

fn resolve_format(flag: Option<String>, cfg: &ConfigFile) -> Result<OutputFormat> {
    match merge(flag, cfg, "format")? {
        Some(s) => s.parse(),
        None => Ok(OutputFormat::Csv),
    }
}

fn resolve_out_dir(flag: Option<PathBuf>, cfg: &ConfigFile) -> Result<PathBuf> {
    let dir = merge(flag, cfg, "out-dir")?.unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    Ok(dir)
}

fn load_yields_and(cfg_paths: Vec<(PathBuf, &str, Unit)>) -> Result<Dataset> {
    let specs: Vec<SeriesFileSpec> = cfg_paths
        .into_iter()
        .map(|(path, name, unit)| SeriesFileSpec::new(path, name, unit))
        .collect();
    load_dataset(&specs)
}

fn default_spread_spec() -> SpreadSpec {
    SpreadSpec::new(LONG_SERIES, SHORT_SERIES).expect("distinct series names")
}

fn write_records(
    dir: &Path,
    stem: &str,
    format: OutputFormat,
    header: &[&str],
    csv_rows: &[Vec<String>],
    json_rows: Vec<Value>,
) -> Result<PathBuf> {
    let path = dir.join(format!("{stem}.{}", format.extension()));
    let contents = match format {
        OutputFormat::Csv => csv_table(header, csv_rows),
        OutputFormat::Json => json_to_string(&Value::Array(json_rows)),
    };
    write_atomic(&path, &contents)?;
    Ok(path)
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

fn cmd_fit(args: FitArgs) -> Result<()> {
    let cfg = load_config(&args.config)?;
    let gdp = require_path(merge(args.gdp, &cfg, "gdp")?, "gdp")?;
    let long = require_path(merge(args.long, &cfg, "long")?, "long")?;
    let short = require_path(merge(args.short, &cfg, "short")?, "short")?;
    let kind: GrowthModelKind = match merge(args.model, &cfg, "model")? {
        Some(s) => s.parse()?,
        None => GrowthModelKind::TurkishNext,
    };
    let horizon = merge(args.horizon, &cfg, "horizon")?.unwrap_or(4);
    let min_train = merge(args.min_train, &cfg, "min-train")?;
    let out_dir = resolve_out_dir(args.out_dir, &cfg)?;
    let format = resolve_format(args.format, &cfg)?;

    let ds = load_yields_and(vec![
        (long, LONG_SERIES, Unit::PercentPerAnnum),
        (short, SHORT_SERIES, Unit::PercentPerAnnum),
        (gdp, GDP_SERIES, Unit::Level),
    ])?;
    let spec = GrowthModelSpec::new(kind, horizon, GDP_SERIES, default_spread_spec())?;
    let fit = fit_growth_model(&ds, &spec)?;
    let report = match min_train {
        None => in_sample_forecast(&ds, &spec)?,
        Some(m) => rolling_oos_forecast(&ds, &spec, m)?,
    };

    print_fit_table(&spec, &fit, &report);

    let rows: Vec<Vec<String>> = report
        .actual
        .iter()
        .map(|(q, a)| {
            let p = report.predicted.get(q).expect("matching forecast quarters");
            vec![q.to_string(), fmt_machine(a), fmt_machine(p)]
        })
        .collect();
    let json_rows: Vec<Value> = report
        .actual
        .iter()
        .map(|(q, a)| {
            let p = report.predicted.get(q).expect("matching forecast quarters");
            json!({
                "quarter": q.to_string(),
                "actual": json_number(a),
                "predicted": json_number(p),
            })
        })
        .collect();
    let forecast_path = write_records(
        &out_dir,
        "forecast",
        format,
        &["quarter", "actual", "predicted"],
        &rows,
        json_rows,
    )?;

    let summary = fit_summary_json(&spec, &fit, &report, min_train);
    let summary_path = out_dir.join("fit.json");
    write_atomic(&summary_path, &json_to_string(&summary))?;

    println!();
    println!("wrote {} and {}", forecast_path.display(), summary_path.display());
    Ok(())
}

fn print_fit_table(spec: &GrowthModelSpec, fit: &RegressionFit, report: &ForecastReport) {
    println!("growth regression: {} (horizon {} quarters)", spec.kind, spec.horizon_k);
    if let (Some(first), Some(last)) =
        (fit.residuals.first_quarter(), fit.residuals.last_quarter())
    {
        println!("rows: {} predictor quarters {first}..{last}", fit.n_obs);
    }
    println!();
    println!("{:<12} {:>14} {:>14} {:>14}", "coefficient", "estimate", "std_error", "t_stat");
    for (i, name) in fit.coefficient_names.iter().enumerate() {
        println!(
            "{:<12} {:>14} {:>14} {:>14}",
            name,
            fmt_human(fit.coefficients[i]),
            fmt_human(fit.std_errors[i]),
            fmt_human(fit.t_stats[i]),
        );
    }
    println!();
    println!("r_squared: {}", fmt_human(fit.r_squared));
    match report.scheme {
        Scheme::InSample => {
            println!("scheme: in_sample");
        }
        Scheme::RollingOos => {
            println!("scheme: rolling_oos (min_train {})", report.min_train);
            println!("r_squared_oos: {}", fmt_human(report.r_squared_oos));
        }
    }
    println!("rmse: {}", fmt_human(report.rmse));
}

fn fit_summary_json(
    spec: &GrowthModelSpec,
    fit: &RegressionFit,
    report: &ForecastReport,
    min_train: Option<usize>,
) -> Value {
    let coefficients: Vec<Value> = fit
        .coefficient_names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            json!({
                "name": name,
                "estimate": json_number(fit.coefficients[i]),
                "std_error": json_number(fit.std_errors[i]),
                "t_stat": json_number(fit.t_stats[i]),
            })
        })
        .collect();
    json!({
        "command": "fit",
        "model": spec.kind.as_str(),
        "horizon": spec.horizon_k,
        "n_obs": fit.n_obs,
        "coefficients": coefficients,
        "r_squared": json_number(fit.r_squared),
        "scheme": match report.scheme {
            Scheme::InSample => "in_sample",
            Scheme::RollingOos => "rolling_oos",
        },
        "min_train": min_train,
        "r_squared_oos": json_number(report.r_squared_oos),
        "rmse": json_number(report.rmse),
    })
}

// ---------------------------------------------------------------------------
// probit
// ---------------------------------------------------------------------------

fn cmd_probit(args: ProbitArgs) -> Result<()> {
    let cfg = load_config(&args.config)?;
    let long = require_path(merge(args.long, &cfg, "long")?, "long")?;
    let short = require_path(merge(args.short, &cfg, "short")?, "short")?;
    let recession = require_path(merge(args.recession, &cfg, "recession")?, "recession")?;
    let lead = merge(args.lead, &cfg, "lead")?.unwrap_or(4);
    let threshold = merge(args.threshold, &cfg, "threshold")?.unwrap_or(0.5);
    let out_dir = resolve_out_dir(args.out_dir, &cfg)?;
    let format = resolve_format(args.format, &cfg)?;

    let ds = load_yields_and(vec![
        (long, LONG_SERIES, Unit::PercentPerAnnum),
        (short, SHORT_SERIES, Unit::PercentPerAnnum),
        (recession, RECESSION_SERIES, Unit::Indicator),
    ])?;
    let spec = ProbitModelSpec::new(RECESSION_SERIES, lead, default_spread_spec(), vec![])?;
    let fit = fit_recession_probit(&ds, &spec)?;
    // Labels shifted so that the indicator for quarter t+lead sits at the
    // predictor quarter t, matching the fitted probabilities.
    let shifted = ds.get(RECESSION_SERIES)?.shift(-(lead as i32));
    let metrics = recession_classification(&fit, &shifted, threshold)?;

    print_probit_table(&spec, &fit, &metrics, threshold);

    let rows: Vec<Vec<String>> = fit
        .fitted_probabilities
        .iter()
        .map(|(q, p)| {
            let actual = shifted.get(q).expect("label exists for every fitted row");
            vec![q.to_string(), fmt_machine(p), fmt_machine(actual)]
        })
        .collect();
    let json_rows: Vec<Value> = fit
        .fitted_probabilities
        .iter()
        .map(|(q, p)| {
            let actual = shifted.get(q).expect("label exists for every fitted row");
            json!({
                "quarter": q.to_string(),
                "probability": json_number(p),
                "actual": json_number(actual),
            })
        })
        .collect();
    let prob_path = write_records(
        &out_dir,
        "probabilities",
        format,
        &["quarter", "probability", "actual"],
        &rows,
        json_rows,
    )?;

    let summary = probit_summary_json(&spec, &fit, &metrics, threshold);
    let summary_path = out_dir.join("probit.json");
    write_atomic(&summary_path, &json_to_string(&summary))?;

    println!();
    println!("wrote {} and {}", prob_path.display(), summary_path.display());
    Ok(())
}

fn fmt_rate(rate: Option<f64>) -> String {
    rate.map(fmt_human).unwrap_or_else(|| "n/a".to_string())
}

fn print_probit_table(
    spec: &ProbitModelSpec,
    fit: &ProbitFit,
    metrics: &ClassificationMetrics,
    threshold: f64,
) {
    println!("recession probit: lead {} quarters", spec.lead_h);
    println!(
        "rows: {} predictor quarters; log_likelihood {}; {} iterations; converged: {}",
        fit.fitted_probabilities.len(),
        fmt_human(fit.log_likelihood),
        fit.iterations,
        fit.converged,
    );
    println!();
    println!("{:<12} {:>14} {:>14}", "coefficient", "estimate", "std_error");
    for (i, name) in fit.coefficient_names.iter().enumerate() {
        println!(
            "{:<12} {:>14} {:>14}",
            name,
            fmt_human(fit.coefficients[i]),
            fmt_human(fit.std_errors[i]),
        );
    }
    println!();
    println!(
        "classification at threshold {}: hit_rate {}  false_alarm_rate {}",
        fmt_human(threshold),
        fmt_rate(metrics.hit_rate),
        fmt_rate(metrics.false_alarm_rate),
    );
    println!(
        "recession quarters: {} of {}",
        metrics.n_recession_quarters, metrics.n_obs
    );
}

fn probit_summary_json(
    spec: &ProbitModelSpec,
    fit: &ProbitFit,
    metrics: &ClassificationMetrics,
    threshold: f64,
) -> Value {
    let coefficients: Vec<Value> = fit
        .coefficient_names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            json!({
                "name": name,
                "estimate": json_number(fit.coefficients[i]),
                "std_error": json_number(fit.std_errors[i]),
            })
        })
        .collect();
    json!({
        "command": "probit",
        "lead": spec.lead_h,
        "threshold": json_number(threshold),
        "n_obs": metrics.n_obs,
        "coefficients": coefficients,
        "log_likelihood": json_number(fit.log_likelihood),
        "iterations": fit.iterations,
        "converged": fit.converged,
        "hit_rate": metrics.hit_rate.map(json_number).unwrap_or(Value::Null),
        "false_alarm_rate": metrics.false_alarm_rate.map(json_number).unwrap_or(Value::Null),
        "n_recession_quarters": metrics.n_recession_quarters,
    })
}

// ---------------------------------------------------------------------------
// spread
// ---------------------------------------------------------------------------

fn cmd_spread(args: SpreadArgs) -> Result<()> {
    let cfg = load_config(&args.config)?;
    let long = require_path(merge(args.long, &cfg, "long")?, "long")?;
    let short = require_path(merge(args.short, &cfg, "short")?, "short")?;
    let gdp = merge(args.gdp, &cfg, "gdp")?;
    let band = merge(args.band, &cfg, "band")?.unwrap_or(0.25);
    let horizon = merge(args.horizon, &cfg, "horizon")?.unwrap_or(4);
    let out_dir = resolve_out_dir(args.out_dir, &cfg)?;
    let format = resolve_format(args.format, &cfg)?;
    if !(band >= 0.0) {
        return Err(Error::Validation {
            msg: format!("flat band must be nonnegative, got {band}"),
        });
    }

    let mut inputs = vec![
        (long, LONG_SERIES, Unit::PercentPerAnnum),
        (short, SHORT_SERIES, Unit::PercentPerAnnum),
    ];
    if let Some(g) = gdp.clone() {
        inputs.push((g, GDP_SERIES, Unit::Level));
    }
    let ds = load_yields_and(inputs)?;
    let spread = compute_spread(&ds, &default_spread_spec())?;
    let growth = match gdp {
        Some(_) => Some(pct_growth(ds.get(GDP_SERIES)?, horizon)?),
        None => None,
    };

    let mut header = vec!["quarter", "spread", "curve_class"];
    if growth.is_some() {
        header.push("growth");
    }
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut counts = [0usize; 3]; // normal, flat, inverted
    for (q, s) in spread.iter() {
        let g = match &growth {
            // With GDP present, keep only quarters whose growth window
            // completes, so every emitted column is fully populated.
            Some(series) => match series.get(q) {
                Some(g) => Some(g),
                None => continue,
            },
            None => None,
        };
        let class = classify_curve(s, band);
        counts[match class {
            crate::models::CurveClass::Normal => 0,
            crate::models::CurveClass::Flat => 1,
            crate::models::CurveClass::Inverted => 2,
        }] += 1;
        let mut row = vec![q.to_string(), fmt_machine(s), class.to_string()];
        let mut record = json!({
            "quarter": q.to_string(),
            "spread": json_number(s),
            "curve_class": class.to_string(),
        });
        if let Some(g) = g {
            row.push(fmt_machine(g));
            record["growth"] = json_number(g);
        }
        rows.push(row);
        json_rows.push(record);
    }

    let path = write_records(&out_dir, "spread", format, &header, &rows, json_rows)?;
    println!(
        "spread over {} quarters: {} normal, {} flat, {} inverted (band {})",
        rows.len(),
        counts[0],
        counts[1],
        counts[2],
        fmt_human(band),
    );
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let cfg = load_config(&args.config)?;
    let defaults = ScenarioSpec::default();
    let start = match merge(args.start, &cfg, "start")? {
        Some(s) => parse_quarter(&s)?,
        None => defaults.start,
    };
    let spec = ScenarioSpec {
        seed: merge(args.seed, &cfg, "seed")?.unwrap_or(defaults.seed),
        n_quarters: merge(args.n_quarters, &cfg, "n-quarters")?.unwrap_or(defaults.n_quarters),
        start,
        true_a: merge(args.true_a, &cfg, "true-a")?.unwrap_or(defaults.true_a),
        true_b: merge(args.true_b, &cfg, "true-b")?.unwrap_or(defaults.true_b),
        noise_sigma: merge(args.noise_sigma, &cfg, "noise-sigma")?
            .unwrap_or(defaults.noise_sigma),
        spread_process: SpreadProcess {
            mean: merge(args.spread_mean, &cfg, "spread-mean")?
                .unwrap_or(defaults.spread_process.mean),
            persistence: merge(args.persistence, &cfg, "persistence")?
                .unwrap_or(defaults.spread_process.persistence),
            shock_sigma: merge(args.shock_sigma, &cfg, "shock-sigma")?
                .unwrap_or(defaults.spread_process.shock_sigma),
        },
        recession_rule: RecessionRule {
            trigger_spread: merge(args.trigger, &cfg, "trigger")?
                .unwrap_or(defaults.recession_rule.trigger_spread),
            lead: merge(args.rec_lead, &cfg, "rec-lead")?.unwrap_or(defaults.recession_rule.lead),
            flip_prob: merge(args.flip_prob, &cfg, "flip-prob")?
                .unwrap_or(defaults.recession_rule.flip_prob),
        },
    };
    let out_dir = resolve_out_dir(args.out_dir, &cfg)?;

    let ds = generate(&spec)?;
    let mut written = Vec::new();
    for name in [LONG_SERIES, SHORT_SERIES, GDP_SERIES, RECESSION_SERIES] {
        let series = ds.get(name)?;
        let path = out_dir.join(format!("{name}.csv"));
        write_atomic(&path, &series_csv(series))?;
        written.push(path);
    }

    println!("scenario:");
    println!("  seed = {}", spec.seed);
    println!("  n_quarters = {}", spec.n_quarters);
    println!("  start = {}", spec.start);
    println!("  true_a = {}", spec.true_a);
    println!("  true_b = {}", spec.true_b);
    println!("  noise_sigma = {}", spec.noise_sigma);
    println!("  spread_mean = {}", spec.spread_process.mean);
    println!("  persistence = {}", spec.spread_process.persistence);
    println!("  shock_sigma = {}", spec.spread_process.shock_sigma);
    println!("  trigger = {}", spec.recession_rule.trigger_spread);
    println!("  rec_lead = {}", spec.recession_rule.lead);
    println!("  flip_prob = {}", spec.recession_rule.flip_prob);
    for path in &written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
