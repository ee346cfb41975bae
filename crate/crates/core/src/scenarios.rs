//! Reference pricing study: the four-case premium table, the monthly
//! premium curve, and sensitivity sweeps over volatility and duration.
//!
//! All outputs are normalized by the current monthly price (`s0 = 1`).

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::market_model::REFERENCE_BETA;
use crate::numeric::log_log_slope;
use crate::pricing::{contract_premium, ContractSpec, RateCurve, MONTH};

/// Dispersion of consumer-plan unit prices across providers (EUR/GB/month).
pub const CONSUMER_SIGMA: f64 = 0.0663;
/// Dispersion of business-plan unit prices across providers (EUR/GB/month).
pub const BUSINESS_SIGMA: f64 = 0.145;
/// Average consumer-plan unit price (EUR/GB/month).
pub const CONSUMER_AVERAGE_PRICE: f64 = 0.0955;
/// Average business-plan unit price (EUR/GB/month).
pub const BUSINESS_AVERAGE_PRICE: f64 = 0.185;
/// USD prices were converted at this many USD per EUR.
pub const USD_PER_EUR: f64 = 1.3;

/// Baseline volatility of the volatility sweep (variance 0.01).
pub const BASELINE_SIGMA: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateSource {
    Fixed(f64),
    /// Curve read at the contract's maturity.
    FromCurve(RateCurve),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub label: String,
    pub sigma: f64,
    pub duration_years: f64,
    pub rate: RateSource,
    pub beta: f64,
    pub s0: f64,
    pub period_length: f64,
}

impl ScenarioConfig {
    fn preset(label: &str, sigma: f64, years: f64) -> Self {
        Self {
            label: label.to_string(),
            sigma,
            duration_years: years,
            rate: RateSource::FromCurve(RateCurve::treasury_reference()),
            beta: REFERENCE_BETA,
            s0: 1.0,
            period_length: MONTH,
        }
    }

    pub fn consumer(years: f64) -> Self {
        Self::preset("Consumer", CONSUMER_SIGMA, years)
    }

    pub fn business(years: f64) -> Self {
        Self::preset("Business", BUSINESS_SIGMA, years)
    }

    /// Five-year consumer contract priced at the one-year rate (0.2%); this
    /// is the setting under which the published monthly curve reads 3.6% in
    /// month 1 and 35.6% in month 12.
    pub fn monthly_curve_reference() -> Self {
        Self {
            rate: RateSource::Fixed(0.002),
            ..Self::consumer(5.0)
        }
    }

    pub fn with_duration(&self, years: f64) -> Self {
        Self {
            duration_years: years,
            ..self.clone()
        }
    }

    pub fn with_sigma(&self, sigma: f64) -> Self {
        Self {
            sigma,
            ..self.clone()
        }
    }

    pub fn n_periods(&self) -> Result<usize> {
        error::positive("duration_years", self.duration_years)?;
        error::positive("period_length", self.period_length)?;
        let ratio = self.duration_years / self.period_length;
        let n = ratio.round();
        if n < 1.0 || (ratio - n).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::Validation(format!(
                "duration {} is not a positive multiple of the period length {}",
                self.duration_years, self.period_length
            )));
        }
        Ok(n as usize)
    }

    pub fn contract(&self) -> Result<ContractSpec> {
        let curve = match &self.rate {
            RateSource::Fixed(r) => RateCurve::flat(error::finite("rate", *r)?),
            RateSource::FromCurve(c) => c.clone(),
        };
        ContractSpec::new(
            self.s0,
            self.beta,
            self.sigma,
            self.n_periods()?,
            self.period_length,
            curve,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PremiumTableRow {
    pub category: String,
    pub years: f64,
    pub total_normalized: f64,
}

/// Premiums for consumer/business contracts over one and five years.
pub fn run_premium_table() -> Vec<PremiumTableRow> {
    [
        ScenarioConfig::consumer(1.0),
        ScenarioConfig::consumer(5.0),
        ScenarioConfig::business(1.0),
        ScenarioConfig::business(5.0),
    ]
    .iter()
    .map(|cfg| {
        let spec = cfg.contract().expect("built-in scenario is valid");
        let schedule = contract_premium(&spec).expect("built-in scenario is valid");
        PremiumTableRow {
            category: cfg.label.clone(),
            years: cfg.duration_years,
            total_normalized: schedule.total_normalized,
        }
    })
    .collect()
}

/// `(month, V(tᵢ)/s0)` for every period of the contract.
pub fn monthly_curve(config: &ScenarioConfig) -> Result<Vec<(usize, f64)>> {
    let schedule = contract_premium(&config.contract()?)?;
    Ok(schedule
        .per_period
        .iter()
        .map(|p| (p.index, p.normalized))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis: Vec<f64>,
    pub totals: Vec<f64>,
    pub baseline_index: usize,
    /// `totals[k] / totals[baseline_index] − 1`.
    pub relative_change: Vec<f64>,
}

impl SweepResult {
    fn new(axis: Vec<f64>, totals: Vec<f64>, baseline_index: usize) -> Self {
        let base = totals[baseline_index];
        let relative_change = totals.iter().map(|t| t / base - 1.0).collect();
        Self {
            axis,
            totals,
            baseline_index,
            relative_change,
        }
    }

    /// `totals[last] / totals[0] − 1`.
    pub fn end_to_end_change(&self) -> f64 {
        self.totals[self.totals.len() - 1] / self.totals[0] - 1.0
    }

    /// Least-squares slope of `ln total` vs `ln axis` over `axis ∈ [lo, hi]`.
    pub fn log_log_slope(&self, lo: f64, hi: f64) -> Option<f64> {
        let (x, y): (Vec<f64>, Vec<f64>) = self
            .axis
            .iter()
            .zip(&self.totals)
            .filter(|(&a, _)| a >= lo && a <= hi)
            .map(|(&a, &t)| (a, t))
            .unzip();
        log_log_slope(&x, &y)
    }

    /// Writes `x,total_normalized,relative_change` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.into());
        w.write_record(["x", "total_normalized", "relative_change"])
            .map_err(io)?;
        for k in 0..self.axis.len() {
            w.write_record([
                self.axis[k].to_string(),
                self.totals[k].to_string(),
                self.relative_change[k].to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Validation(format!("{name} grid is empty")));
    }
    let mut prev = 0.0;
    for &g in grid {
        if !g.is_finite() || g <= prev {
            return Err(Error::Validation(format!(
                "{name} grid must be strictly ascending and > 0 (got {g})"
            )));
        }
        prev = g;
    }
    Ok(())
}

/// σ from 0.10 to 0.145 in steps of 0.005.
pub fn default_volatility_grid() -> Vec<f64> {
    (0..=9).map(|k| (100 + 5 * k) as f64 / 1000.0).collect()
}

/// Durations of 1 to 60 months, in years.
pub fn default_duration_grid() -> Vec<f64> {
    (1..=60).map(|m| m as f64 / 12.0).collect()
}

/// Normalized total premium for each σ in `sigma_grid`. The baseline is
/// σ = 0.1 when the grid contains it, otherwise the first point.
pub fn volatility_sweep(config: &ScenarioConfig, sigma_grid: &[f64]) -> Result<SweepResult> {
    check_grid("sigma", sigma_grid)?;
    let totals = sigma_grid
        .par_iter()
        .map(|&s| Ok(contract_premium(&config.with_sigma(s).contract()?)?.total_normalized))
        .collect::<Result<Vec<_>>>()?;
    let baseline = sigma_grid
        .iter()
        .position(|&s| (s - BASELINE_SIGMA).abs() <= 1e-12)
        .unwrap_or(0);
    Ok(SweepResult::new(sigma_grid.to_vec(), totals, baseline))
}

/// Normalized total premium for each contract duration, each priced at the
/// curve rate for its own maturity. The baseline is the first duration.
pub fn duration_sweep(
    base: &ScenarioConfig,
    durations: &[f64],
    curve: &RateCurve,
) -> Result<SweepResult> {
    check_grid("duration", durations)?;
    let cfg = ScenarioConfig {
        rate: RateSource::FromCurve(curve.clone()),
        ..base.clone()
    };
    let totals = durations
        .par_iter()
        .map(|&d| Ok(contract_premium(&cfg.with_duration(d).contract()?)?.total_normalized))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::new(durations.to_vec(), totals, 0))
}
