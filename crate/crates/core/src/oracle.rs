//! Monte Carlo pricer that cross-checks the closed-form premium.
//!
//! Paths follow the risk-neutral law `dS = r·S·dt + σ·S·dW` and payoffs are
//! discounted at the contract rate. Work is split in blocks of
//! [`rng::BLOCK_PATHS`] paths, each drawing from its own substream, and the
//! block statistics are merged in block order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::market_model::LogStepper;
use crate::numeric::RunningStats;
use crate::pricing::{std_normal_cdf, ContractSpec};
use crate::rng::{self, standard_normal};

pub const MIN_PATHS: usize = 100;

/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Standard error of `mean` from the unbiased sample variance.
    pub std_error: f64,
    pub n_paths: usize,
    pub seed: u64,
}

impl McEstimate {
    /// `(value − mean) / std_error`; infinite when the estimate is exact
    /// and `value` differs from it.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = value - self.mean;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    pub fn confidence_interval(&self, z: f64) -> (f64, f64) {
        (self.mean - z * self.std_error, self.mean + z * self.std_error)
    }

    /// Two-sided confidence interval at `level` (e.g. 0.99).
    pub fn confidence_interval_at(&self, level: f64) -> (f64, f64) {
        self.confidence_interval(normal_quantile(0.5 + 0.5 * level))
    }

    pub fn contains(&self, value: f64, z: f64) -> bool {
        let (lo, hi) = self.confidence_interval(z);
        lo <= value && value <= hi
    }
}

/// Inverse of [`std_normal_cdf`] by bisection; only used for interval widths.
fn normal_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-40.0_f64, 40.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if std_normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_paths(n_paths: usize) -> Result<()> {
    if n_paths < MIN_PATHS {
        return Err(Error::Validation(format!(
            "n_paths must be >= {MIN_PATHS}, got {n_paths}"
        )));
    }
    Ok(())
}

fn run_blocks<F>(n_paths: usize, seed: u64, simulate_block: F) -> McEstimate
where
    F: Fn(&mut rng::StreamRng, usize, &mut RunningStats) + Sync,
{
    let blocks: Vec<RunningStats> = rng::blocks(n_paths)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(block, _, len)| {
            let mut rng = rng::stream(seed, block);
            let mut stats = RunningStats::new();
            simulate_block(&mut rng, len, &mut stats);
            stats
        })
        .collect();
    let mut total = RunningStats::new();
    for b in &blocks {
        total.merge(b);
    }
    McEstimate {
        mean: total.mean(),
        std_error: total.std_error(),
        n_paths,
        seed,
    }
}

/// Estimates the value of the period-`i` claim from terminal draws of the
/// exact log-normal law at `tᵢ`.
pub fn mc_period_price(spec: &ContractSpec, i: usize, n_paths: usize, seed: u64) -> Result<McEstimate> {
    spec.validate()?;
    check_paths(n_paths)?;
    if i == 0 || i > spec.n_periods {
        return Err(Error::Validation(format!(
            "period index {i} outside 1..={}",
            spec.n_periods
        )));
    }
    let rate = spec.rate();
    let t = spec.settlement_time(i);
    let strike = spec.strike(t);
    let discount = (-rate * t).exp();
    let log_mean = spec.s0.ln() + (rate - 0.5 * spec.sigma * spec.sigma) * t;
    let log_scale = spec.sigma * t.sqrt();
    Ok(run_blocks(n_paths, seed, |rng, len, stats| {
        for _ in 0..len {
            let terminal = (log_mean + log_scale * standard_normal(rng)).exp();
            stats.push(discount * (terminal - strike).max(0.0));
        }
    }))
}

/// Estimates the whole contract by simulating every path on the settlement
/// grid and averaging the per-path discounted claim totals.
pub fn mc_contract_price(spec: &ContractSpec, n_paths: usize, seed: u64) -> Result<McEstimate> {
    mc_contract_price_at_rate(spec, spec.rate(), n_paths, seed)
}

/// As [`mc_contract_price`] but simulating and discounting at `rate`
/// instead of the contract rate.
pub fn mc_contract_price_at_rate(
    spec: &ContractSpec,
    rate: f64,
    n_paths: usize,
    seed: u64,
) -> Result<McEstimate> {
    spec.validate()?;
    check_paths(n_paths)?;
    let times = spec.settlement_times();
    let stepper = LogStepper::new(rate, spec.sigma, &times)?;
    let weights: Vec<(f64, f64)> = times
        .iter()
        .map(|&t| ((-rate * t).exp(), spec.strike(t)))
        .collect();
    Ok(run_blocks(n_paths, seed, |rng, len, stats| {
        for _ in 0..len {
            let mut total = 0.0;
            stepper.walk(spec.s0, rng, |k, price| {
                let (discount, strike) = weights[k];
                total += discount * (price - strike).max(0.0);
            });
            stats.push(total);
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pricing::{period_premium, RateCurve};

    fn consumer(n: usize) -> ContractSpec {
        ContractSpec::monthly(1.0, 0.438, 0.0663, n, RateCurve::flat(0.002)).unwrap()
    }

    #[test]
    fn validation() {
        let spec = consumer(12);
        assert!(mc_period_price(&spec, 0, 1000, 1).is_err());
        assert!(mc_period_price(&spec, 13, 1000, 1).is_err());
        assert!(mc_period_price(&spec, 1, 99, 1).is_err());
        assert!(mc_contract_price(&spec, 10, 1).is_err());
    }

    #[test]
    fn deterministic_limit() {
        let spec = ContractSpec::monthly(1.0, 0.438, 1e-12, 12, RateCurve::flat(0.002)).unwrap();
        let est = mc_period_price(&spec, 6, 1000, 9).unwrap();
        let t: f64 = 0.5;
        let expected = ((0.002 * t).exp() - (-0.438 * t).exp()) * (-0.002 * t).exp();
        assert!((est.mean - expected).abs() < 1e-10);
        assert!(est.std_error < 1e-10);
    }

    #[test]
    fn period_estimate_brackets_closed_form() {
        let spec = consumer(12);
        let est = mc_period_price(&spec, 12, 200_000, 5).unwrap();
        let exact = period_premium(&spec, 12).unwrap();
        assert!(est.z_score(exact).abs() < 4.0, "{est:?} vs {exact}");
    }

    #[test]
    fn single_period_contract_matches_terminal_sampling() {
        let spec = consumer(1);
        let a = mc_contract_price(&spec, 50_000, 77).unwrap();
        let b = mc_period_price(&spec, 1, 50_000, 77).unwrap();
        assert!((a.mean - b.mean).abs() <= 2.0 * a.std_error.max(b.std_error));
    }

    #[test]
    fn quantile_inverts_cdf() {
        assert!((normal_quantile(0.995) - Z_99).abs() < 1e-12);
        let est = McEstimate { mean: 1.0, std_error: 0.1, n_paths: 100, seed: 0 };
        let (lo, hi) = est.confidence_interval_at(0.99);
        assert!((hi - 1.0 - 0.1 * Z_99).abs() < 1e-12 && (1.0 - lo - 0.1 * Z_99).abs() < 1e-12);
        assert!((est.z_score(1.2) - 2.0).abs() < 1e-12);
        let exact = McEstimate { std_error: 0.0, ..est };
        assert_eq!(exact.z_score(1.0), 0.0);
        assert_eq!(exact.z_score(0.5), f64::NEG_INFINITY);
    }
}
