//! The `storage-insure` command-line front end.
//!
//! Subcommands: `fit`, `quote`, `verify`, `sweep`, `settle`. Every command
//! is deterministic given its flags and `--seed`. Exit codes: 0 success,
//! 2 invalid input, 3 verification failure.
//!
//! Parameters resolve in three layers: profile defaults, then the
//! `--config` file (`key=value` lines, `#` comments), then flags.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::market_model::{
    estimate_volatility, fit_exponential_trend, PriceSeries, TrendParams, REFERENCE_BETA,
};
use crate::oracle::{mc_contract_price_at_rate, McEstimate};
use crate::pricing::{contract_premium, ContractSpec, PremiumSchedule, RateCurve, MONTH};
use crate::risk::{settlement_study, Measure, SettlementStats};
use crate::scenarios::{
    default_duration_grid, default_volatility_grid, duration_sweep, volatility_sweep, RateSource,
    ScenarioConfig, SweepResult, BUSINESS_SIGMA, CONSUMER_SIGMA,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_VERIFY_PATHS: usize = 1_000_000;
pub const DEFAULT_SETTLE_PATHS: usize = 100_000;
pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;

#[derive(Debug, Parser)]
#[command(
    name = "storage-insure",
    version,
    about = "Price insurance against cloud storage price rises above trend"
)]
pub struct Cli {
    /// `key=value` parameter file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the exponential price trend (and volatility) to a `date,price` CSV.
    Fit { csv: PathBuf },
    /// Closed-form premium schedule for a contract.
    Quote(ContractArgs),
    /// Compare the closed-form premium with a Monte Carlo estimate.
    Verify {
        #[command(flatten)]
        contract: ContractArgs,
        #[arg(long)]
        n_paths: Option<usize>,
        /// Largest acceptable |z| before exiting with status 3.
        #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
        threshold: f64,
        /// Simulate at this rate instead of the contract rate (detector self-test).
        #[arg(long)]
        corrupt_rate: Option<f64>,
    },
    /// Premium sensitivity to volatility or contract duration.
    Sweep {
        kind: SweepKind,
        #[command(flatten)]
        contract: ContractArgs,
        /// Comma list `a,b,c` or inclusive range `start:stop:step`;
        /// σ values for `volatility`, months for `duration`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Settle the contract along simulated paths and summarise the claims.
    Settle {
        #[command(flatten)]
        contract: ContractArgs,
        #[arg(long)]
        n_paths: Option<usize>,
        #[arg(long, value_enum, default_value = "risk-neutral")]
        measure: MeasureArg,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct ContractArgs {
    /// Reference volatility profile.
    #[arg(long, value_enum)]
    pub profile: Option<Profile>,
    /// Contract duration in years (default 1).
    #[arg(long)]
    pub years: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub s0: Option<f64>,
    /// Flat continuously compounded rate; overrides the rate curve.
    #[arg(long, allow_negative_numbers = true)]
    pub rate: Option<f64>,
    /// Curve points `tenor:rate,...` (default `1:0.002,5:0.0099`).
    #[arg(long)]
    pub rate_curve: Option<String>,
    #[arg(long)]
    pub period_length: Option<f64>,
    /// Number of settlement periods; overrides `--years`.
    #[arg(long)]
    pub n_periods: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Consumer,
    Business,
}

impl Profile {
    pub fn sigma(self) -> f64 {
        match self {
            Profile::Consumer => CONSUMER_SIGMA,
            Profile::Business => BUSINESS_SIGMA,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Volatility,
    Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    RiskNeutral,
    Physical,
    Trend,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::RiskNeutral => Measure::RiskNeutral,
            MeasureArg::Physical => Measure::Physical,
            MeasureArg::Trend => Measure::Trend,
        }
    }
}

/// Fully resolved parameters for one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppConfig {
    pub profile: Profile,
    pub beta: f64,
    pub sigma: f64,
    pub s0: f64,
    pub rate: Option<f64>,
    pub rate_curve: RateCurve,
    pub period_length: f64,
    pub n_periods: usize,
    pub seed: u64,
    pub n_paths: Option<usize>,
    pub format: Format,
}

impl AppConfig {
    pub fn curve(&self) -> RateCurve {
        match self.rate {
            Some(r) => RateCurve::flat(r),
            None => self.rate_curve.clone(),
        }
    }

    pub fn contract(&self) -> Result<ContractSpec> {
        ContractSpec::new(
            self.s0,
            self.beta,
            self.sigma,
            self.n_periods,
            self.period_length,
            self.curve(),
        )
    }

    pub fn scenario(&self) -> ScenarioConfig {
        ScenarioConfig {
            label: format!("{:?}", self.profile),
            sigma: self.sigma,
            duration_years: self.n_periods as f64 * self.period_length,
            rate: match self.rate {
                Some(r) => RateSource::Fixed(r),
                None => RateSource::FromCurve(self.rate_curve.clone()),
            },
            beta: self.beta,
            s0: self.s0,
            period_length: self.period_length,
        }
    }
}

/// Values gathered from the config file and flags before defaults apply.
#[derive(Debug, Clone, Default)]
struct Layer {
    profile: Option<Profile>,
    years: Option<f64>,
    beta: Option<f64>,
    sigma: Option<f64>,
    s0: Option<f64>,
    rate: Option<f64>,
    rate_curve: Option<RateCurve>,
    period_length: Option<f64>,
    n_periods: Option<usize>,
    seed: Option<u64>,
    n_paths: Option<usize>,
    format: Option<Format>,
}

impl Layer {
    fn over(self, base: Layer) -> Layer {
        Layer {
            profile: self.profile.or(base.profile),
            years: self.years.or(base.years),
            beta: self.beta.or(base.beta),
            sigma: self.sigma.or(base.sigma),
            s0: self.s0.or(base.s0),
            rate: self.rate.or(base.rate),
            rate_curve: self.rate_curve.or(base.rate_curve),
            period_length: self.period_length.or(base.period_length),
            n_periods: self.n_periods.or(base.n_periods),
            seed: self.seed.or(base.seed),
            n_paths: self.n_paths.or(base.n_paths),
            format: self.format.or(base.format),
        }
    }

    fn from_args(args: &ContractArgs) -> Result<Layer> {
        Ok(Layer {
            profile: args.profile,
            years: args.years,
            beta: args.beta,
            sigma: args.sigma,
            s0: args.s0,
            rate: args.rate,
            rate_curve: args.rate_curve.as_deref().map(parse_rate_curve).transpose()?,
            period_length: args.period_length,
            n_periods: args.n_periods,
            ..Layer::default()
        })
    }

    fn resolve(self) -> Result<AppConfig> {
        let profile = self.profile.unwrap_or(Profile::Consumer);
        let period_length = self.period_length.unwrap_or(MONTH);
        if !(period_length.is_finite() && period_length > 0.0) {
            return Err(Error::Validation(format!(
                "period_length must be > 0, got {period_length}"
            )));
        }
        let n_periods = match (self.n_periods, self.years) {
            (Some(n), _) => n,
            (None, years) => {
                let years = years.unwrap_or(1.0);
                ScenarioConfig {
                    duration_years: years,
                    period_length,
                    ..ScenarioConfig::consumer(1.0)
                }
                .n_periods()?
            }
        };
        let cfg = AppConfig {
            profile,
            beta: self.beta.unwrap_or(REFERENCE_BETA),
            sigma: self.sigma.unwrap_or(profile.sigma()),
            s0: self.s0.unwrap_or(1.0),
            rate: self.rate,
            rate_curve: self.rate_curve.unwrap_or_else(RateCurve::treasury_reference),
            period_length,
            n_periods,
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            n_paths: self.n_paths,
            format: self.format.unwrap_or(Format::Table),
        };
        cfg.contract()?;
        Ok(cfg)
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Validation(format!("bad value for `{key}`: `{value}`")))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T> {
    T::from_str(value, true).map_err(|_| Error::Validation(format!("bad value for `{key}`: `{value}`")))
}

/// Parses `tenor:rate,tenor:rate,...`.
pub fn parse_rate_curve(text: &str) -> Result<RateCurve> {
    let points = text
        .split(',')
        .map(|item| {
            let (t, r) = item.trim().split_once(':').ok_or_else(|| {
                Error::Validation(format!("rate curve point `{item}` is not `tenor:rate`"))
            })?;
            Ok((parse_value("rate_curve", t.trim())?, parse_value("rate_curve", r.trim())?))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    RateCurve::from_points(&points)
}

/// Parses `a,b,c` or an inclusive `start:stop:step` range.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let start: f64 = parse_value("grid", start.trim())?;
            let stop: f64 = parse_value("grid", stop.trim())?;
            let step: f64 = parse_value("grid", step.trim())?;
            if step.is_nan() || step <= 0.0 || stop < start {
                return Err(Error::Validation(format!("bad grid range `{text}`")));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|k| start + k as f64 * step).collect())
        }
        [_] => text.split(',').map(|v| parse_value("grid", v.trim())).collect(),
        _ => Err(Error::Validation(format!("bad grid `{text}`"))),
    }
}

const CONFIG_KEYS: &[&str] = &[
    "profile",
    "years",
    "beta",
    "sigma",
    "s0",
    "rate",
    "rate_curve",
    "period_length",
    "n_periods",
    "seed",
    "n_paths",
    "format",
];

/// Parses a `key=value` config file body. Unknown keys are rejected.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Validation(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim().replace('-', "_");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Error::Validation(format!(
                "config line {}: unknown key `{key}`",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn config_layer(path: &Path) -> Result<Layer> {
    let text = std::fs::read_to_string(path)?;
    let map = parse_config(&text)?;
    let mut layer = Layer::default();
    for (key, value) in &map {
        let v = value.as_str();
        match key.as_str() {
            "profile" => layer.profile = Some(parse_enum(key, v)?),
            "years" => layer.years = Some(parse_value(key, v)?),
            "beta" => layer.beta = Some(parse_value(key, v)?),
            "sigma" => layer.sigma = Some(parse_value(key, v)?),
            "s0" => layer.s0 = Some(parse_value(key, v)?),
            "rate" => layer.rate = Some(parse_value(key, v)?),
            "rate_curve" => layer.rate_curve = Some(parse_rate_curve(v)?),
            "period_length" => layer.period_length = Some(parse_value(key, v)?),
            "n_periods" => layer.n_periods = Some(parse_value(key, v)?),
            "seed" => layer.seed = Some(parse_value(key, v)?),
            "n_paths" => layer.n_paths = Some(parse_value(key, v)?),
            "format" => layer.format = Some(parse_enum(key, v)?),
            _ => unreachable!("keys checked by parse_config"),
        }
    }
    Ok(layer)
}

/// Formats `x` with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn sig(x: f64) -> String {
    fmt_sig(x, 4)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub n_observations: usize,
    pub trend: TrendParams,
    /// Annualized log-return volatility, when the series is uniformly spaced.
    pub volatility: Option<f64>,
    pub volatility_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuoteReport {
    pub spec: ContractSpec,
    pub schedule: PremiumSchedule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub closed_form: f64,
    pub contract_rate: f64,
    pub simulated_rate: f64,
    pub monte_carlo: McEstimate,
    /// `None` when the estimate has zero spread and differs from the closed form.
    pub z_score: Option<f64>,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub sweep: SweepResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettleReport {
    pub closed_form_premium: f64,
    pub stats: SettlementStats,
    pub z_score: Option<f64>,
}

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Invocation { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, text)) => match &cli.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Invocation { code, stdout: String::new(), stderr: String::new() },
                Err(e) => Invocation {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                },
            },
            None => Invocation { code, stdout: text, stderr: String::new() },
        },
        Err(e) => Invocation {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn resolve(cli: &Cli, contract: &ContractArgs, n_paths: Option<usize>) -> Result<AppConfig> {
    let file = match &cli.config {
        Some(path) => config_layer(path)?,
        None => Layer::default(),
    };
    let flags = Layer {
        seed: cli.seed,
        format: cli.format,
        n_paths,
        ..Layer::from_args(contract)?
    };
    flags.over(file).resolve()
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    match &cli.command {
        Command::Fit { csv } => {
            let format = match &cli.config {
                Some(path) => config_layer(path)?.format,
                None => None,
            };
            cmd_fit(csv, cli.format.or(format).unwrap_or(Format::Table)).map(|s| (EXIT_OK, s))
        }
        Command::Quote(contract) => {
            let cfg = resolve(cli, contract, None)?;
            cmd_quote(&cfg).map(|s| (EXIT_OK, s))
        }
        Command::Verify { contract, n_paths, threshold, corrupt_rate } => {
            let cfg = resolve(cli, contract, *n_paths)?;
            let (report, text) = cmd_verify(&cfg, *threshold, *corrupt_rate)?;
            Ok((if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED }, text))
        }
        Command::Sweep { kind, contract, grid } => {
            let cfg = resolve(cli, contract, None)?;
            let grid = grid.as_deref().map(parse_grid).transpose()?;
            cmd_sweep(&cfg, *kind, grid).map(|s| (EXIT_OK, s))
        }
        Command::Settle { contract, n_paths, measure } => {
            let cfg = resolve(cli, contract, *n_paths)?;
            cmd_settle(&cfg, (*measure).into()).map(|s| (EXIT_OK, s))
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn key_values(format: Format, rows: &[(&str, String)]) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("key,value\n");
            for (k, v) in rows {
                let _ = writeln!(out, "{k},{v}");
            }
        }
        _ => {
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                let _ = writeln!(out, "{k:<width$}  {v}");
            }
        }
    }
    out
}

pub fn cmd_fit(csv: &Path, format: Format) -> Result<String> {
    let series = PriceSeries::from_csv_path(csv).map_err(|e| match e {
        Error::Io(io) => Error::Validation(format!("cannot read {}: {io}", csv.display())),
        other => other,
    })?;
    let trend = fit_exponential_trend(&series)?;
    let (volatility, volatility_note) = match estimate_volatility(&series) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let report = FitReport {
        n_observations: series.len(),
        trend,
        volatility,
        volatility_note,
    };
    if format == Format::Json {
        return to_json(&report);
    }
    let full = format == Format::Csv;
    let num = |x: f64| if full { x.to_string() } else { sig(x) };
    let mut rows = vec![
        ("observations", report.n_observations.to_string()),
        ("p0", num(report.trend.p0)),
        ("beta", num(report.trend.beta)),
    ];
    match (report.volatility, &report.volatility_note) {
        (Some(v), _) => rows.push(("volatility", num(v))),
        (None, Some(note)) if !full => rows.push(("volatility", format!("n/a ({note})"))),
        _ => rows.push(("volatility", String::new())),
    }
    Ok(key_values(format, &rows))
}

pub fn cmd_quote(cfg: &AppConfig) -> Result<String> {
    let spec = cfg.contract()?;
    let schedule = contract_premium(&spec)?;
    let mut out = String::new();
    match cfg.format {
        Format::Json => return to_json(&QuoteReport { spec, schedule }),
        Format::Csv => {
            out.push_str("period,t,premium,premium_normalized\n");
            for p in &schedule.per_period {
                let _ = writeln!(out, "{},{},{},{}", p.index, p.t, p.premium, p.normalized);
            }
            let _ = writeln!(out, "total,,{},{}", schedule.total, schedule.total_normalized);
        }
        Format::Table => {
            let _ = writeln!(
                out,
                "s0 = {}  beta = {}  sigma = {}  rate = {}  periods = {}",
                sig(spec.s0),
                sig(spec.beta),
                sig(spec.sigma),
                sig(schedule.rate),
                spec.n_periods
            );
            let _ = writeln!(out, "{:>6}  {:>8}  {:>10}  {:>10}", "period", "t", "premium", "normalized");
            for p in &schedule.per_period {
                let _ = writeln!(
                    out,
                    "{:>6}  {:>8}  {:>10}  {:>10}",
                    p.index,
                    sig(p.t),
                    sig(p.premium),
                    sig(p.normalized)
                );
            }
            let _ = writeln!(
                out,
                "{:>6}  {:>8}  {:>10}  {:>10}",
                "total",
                "",
                sig(schedule.total),
                sig(schedule.total_normalized)
            );
        }
    }
    Ok(out)
}

pub fn cmd_verify(cfg: &AppConfig, threshold: f64, corrupt_rate: Option<f64>) -> Result<(VerifyReport, String)> {
    let spec = cfg.contract()?;
    let closed_form = contract_premium(&spec)?.total;
    let contract_rate = spec.rate();
    let simulated_rate = corrupt_rate.unwrap_or(contract_rate);
    let n_paths = cfg.n_paths.unwrap_or(DEFAULT_VERIFY_PATHS);
    let mc = mc_contract_price_at_rate(&spec, simulated_rate, n_paths, cfg.seed)?;
    let z = mc.z_score(closed_form);
    let report = VerifyReport {
        closed_form,
        contract_rate,
        simulated_rate,
        monte_carlo: mc,
        z_score: finite(z),
        threshold,
        passed: z.abs() <= threshold,
    };
    let text = match cfg.format {
        Format::Json => to_json(&report)?,
        format => {
            let full = format == Format::Csv;
            let num = |x: f64| if full { x.to_string() } else { sig(x) };
            key_values(
                format,
                &[
                    ("closed_form", num(report.closed_form)),
                    ("mc_mean", num(mc.mean)),
                    ("mc_std_error", num(mc.std_error)),
                    ("z_score", num(z)),
                    ("threshold", num(threshold)),
                    ("n_paths", n_paths.to_string()),
                    ("seed", cfg.seed.to_string()),
                    ("contract_rate", num(contract_rate)),
                    ("simulated_rate", num(simulated_rate)),
                    ("result", if report.passed { "PASS" } else { "FAIL" }.to_string()),
                ],
            )
        }
    };
    Ok((report, text))
}

pub fn cmd_sweep(cfg: &AppConfig, kind: SweepKind, grid: Option<Vec<f64>>) -> Result<String> {
    let scenario = cfg.scenario();
    let sweep = match kind {
        SweepKind::Volatility => {
            volatility_sweep(&scenario, &grid.unwrap_or_else(default_volatility_grid))?
        }
        SweepKind::Duration => {
            let years = match grid {
                Some(months) => months.iter().map(|m| m / 12.0).collect(),
                None => default_duration_grid(),
            };
            duration_sweep(&scenario, &years, &cfg.curve())?
        }
    };
    match cfg.format {
        Format::Json => to_json(&SweepReport { kind, sweep }),
        Format::Csv => {
            let mut buf = Vec::new();
            sweep.write_csv(&mut buf)?;
            Ok(String::from_utf8(buf).expect("csv output is utf-8"))
        }
        Format::Table => {
            let axis = match kind {
                SweepKind::Volatility => "sigma",
                SweepKind::Duration => "years",
            };
            let mut out = format!("{axis:>8}  {:>10}  {:>10}\n", "total", "change");
            for k in 0..sweep.axis.len() {
                let _ = writeln!(
                    out,
                    "{:>8}  {:>10}  {:>9}%",
                    sig(sweep.axis[k]),
                    sig(sweep.totals[k]),
                    sig(100.0 * sweep.relative_change[k])
                );
            }
            Ok(out)
        }
    }
}

pub fn cmd_settle(cfg: &AppConfig, measure: Measure) -> Result<String> {
    let spec = cfg.contract()?;
    let closed_form_premium = contract_premium(&spec)?.total;
    let stats = settlement_study(
        &spec,
        measure,
        cfg.n_paths.unwrap_or(DEFAULT_SETTLE_PATHS),
        cfg.seed,
    )?;
    let z_score = McEstimate {
        mean: stats.mean_discounted_claims,
        std_error: stats.std_error,
        n_paths: stats.n_paths,
        seed: stats.seed,
    }
    .z_score(closed_form_premium);
    let report = SettleReport {
        closed_form_premium,
        stats,
        z_score: finite(z_score),
    };
    if cfg.format == Format::Json {
        return to_json(&report);
    }
    let full = cfg.format == Format::Csv;
    let num = |x: f64| if full { x.to_string() } else { sig(x) };
    let s = &report.stats;
    let mut rows = vec![
        ("measure", format!("{:?}", s.measure)),
        ("n_paths", s.n_paths.to_string()),
        ("seed", s.seed.to_string()),
        ("mean_discounted_claims", num(s.mean_discounted_claims)),
        ("std_error", num(s.std_error)),
        ("closed_form_premium", num(closed_form_premium)),
        ("z_score", num(z_score)),
        ("payout_fraction", num(s.payout_fraction)),
    ];
    let labels = ["q05", "q25", "q50", "q75", "q95"];
    for (label, (_, v)) in labels.iter().zip(&s.quantiles) {
        rows.push((label, num(*v)));
    }
    Ok(key_values(cfg.format, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(2.46902706, 4), "2.469");
        assert_eq!(fmt_sig(36.5061, 4), "36.51");
        assert_eq!(fmt_sig(0.0362019, 4), "0.03620");
        assert_eq!(fmt_sig(1234.5, 4), "1234");
        assert_eq!(fmt_sig(0.0, 4), "0");
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("0.1,0.2, 0.3").unwrap(), vec![0.1, 0.2, 0.3]);
        let g = parse_grid("1:12:1").unwrap();
        assert_eq!(g.len(), 12);
        assert_eq!(g[11], 12.0);
        assert_eq!(parse_grid("0.1:0.145:0.005").unwrap().len(), 10);
        assert!(parse_grid("1:0:1").is_err());
        assert!(parse_grid("a,b").is_err());
        assert!(parse_grid("1:2").is_err());
    }

    #[test]
    fn config_parsing() {
        let map = parse_config("# comment\nsigma = 0.145\nn-periods=60 # trailing\n\n").unwrap();
        assert_eq!(map["sigma"], "0.145");
        assert_eq!(map["n_periods"], "60");
        assert!(parse_config("volatility=0.1").is_err());
        assert!(parse_config("sigma").is_err());
    }

    #[test]
    fn rate_curve_syntax() {
        let c = parse_rate_curve("1:0.002, 5:0.0099").unwrap();
        assert_eq!(c, RateCurve::treasury_reference());
        assert!(parse_rate_curve("1=0.002").is_err());
        assert!(parse_rate_curve("5:0.01,1:0.02").is_err());
    }

    #[test]
    fn defaults_resolve_to_consumer_one_year() {
        let cfg = Layer::default().resolve().unwrap();
        assert_eq!(cfg.profile, Profile::Consumer);
        assert_eq!(cfg.sigma, CONSUMER_SIGMA);
        assert_eq!(cfg.n_periods, 12);
        assert_eq!(cfg.contract().unwrap().rate(), 0.002);
        let five = Layer { years: Some(5.0), profile: Some(Profile::Business), ..Layer::default() }
            .resolve()
            .unwrap();
        assert_eq!(five.n_periods, 60);
        assert_eq!(five.sigma, BUSINESS_SIGMA);
        assert_eq!(five.contract().unwrap().rate(), 0.0099);
    }

    #[test]
    fn flags_override_file() {
        let file = Layer { sigma: Some(0.2), s0: Some(2.0), ..Layer::default() };
        let flags = Layer { sigma: Some(0.3), ..Layer::default() };
        let cfg = flags.over(file).resolve().unwrap();
        assert_eq!(cfg.sigma, 0.3);
        assert_eq!(cfg.s0, 2.0);
    }

    #[test]
    fn invalid_contracts_rejected() {
        assert!(Layer { sigma: Some(0.0), ..Layer::default() }.resolve().is_err());
        assert!(Layer { years: Some(0.01), ..Layer::default() }.resolve().is_err());
        assert!(Layer { n_periods: Some(0), ..Layer::default() }.resolve().is_err());
    }
}
