//! Claim-side semantics: indemnity payoffs, the purchaser's cash flows and
//! settlement replay along simulated price paths.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::market_model::{LogStepper, PricePath};
use crate::numeric::{quantile_sorted, CompensatedSum, RunningStats};
use crate::pricing::ContractSpec;
use crate::rng;

/// `max(actual − strike, 0)`.
pub fn claim_payout(actual_price: f64, strike: f64) -> Result<f64> {
    error::non_negative("actual_price", actual_price)?;
    error::non_negative("strike", strike)?;
    Ok((actual_price - strike).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClaimEvent {
    pub t: f64,
    pub actual_price: f64,
    pub strike: f64,
    pub payout: f64,
}

/// Cash flows seen by the insured.
///
/// `premium_at_zero` is stored as a non-negative magnitude; it is an
/// outflow for the insured. Claims are inflows ordered by time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CashFlowSchedule {
    pub premium_at_zero: f64,
    pub claims: Vec<ClaimEvent>,
}

impl CashFlowSchedule {
    /// Signed flows `C₀ = −premium, Cᵢ = payoutᵢ` as `(t, amount)` pairs.
    pub fn signed_flows(&self) -> Vec<(f64, f64)> {
        std::iter::once((0.0, -self.premium_at_zero))
            .chain(self.claims.iter().map(|c| (c.t, c.payout)))
            .collect()
    }

    pub fn total_claims(&self) -> f64 {
        self.claims.iter().map(|c| c.payout).collect::<CompensatedSum>().value()
    }

    /// `Σ e^(−rate·tᵢ)·payoutᵢ`.
    pub fn discounted_claims(&self, rate: f64) -> f64 {
        self.claims
            .iter()
            .map(|c| (-rate * c.t).exp() * c.payout)
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn periods_with_payout(&self) -> usize {
        self.claims.iter().filter(|c| c.payout > 0.0).count()
    }

    /// Writes `t,actual,strike,payout` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.into());
        w.write_record(["t", "actual", "strike", "payout"]).map_err(io)?;
        for c in &self.claims {
            w.write_record([
                c.t.to_string(),
                c.actual_price.to_string(),
                c.strike.to_string(),
                c.payout.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Replays the contract along `path`, one claim per settlement time.
///
/// The path must be sampled exactly at every `tᵢ`; prices are never
/// interpolated.
pub fn settle_contract(spec: &ContractSpec, path: &PricePath, premium: f64) -> Result<CashFlowSchedule> {
    spec.validate()?;
    error::non_negative("premium", premium)?;
    let claims = spec
        .settlement_times()
        .into_iter()
        .map(|t| {
            let actual_price = path.price_at(t).ok_or_else(|| {
                Error::Validation(format!("price path has no sample at settlement time {t}"))
            })?;
            let strike = spec.strike(t);
            Ok(ClaimEvent {
                t,
                actual_price,
                strike,
                payout: claim_payout(actual_price, strike)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CashFlowSchedule {
        premium_at_zero: premium,
        claims,
    })
}

/// Which price dynamics drive a settlement study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// Drift `r`: discounted claims average to the fair premium.
    RiskNeutral,
    /// Drift `−β`: the price model itself.
    Physical,
    /// Prices sit exactly on the expected trend; no claims are ever paid.
    Trend,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettlementStats {
    pub measure: Measure,
    pub n_paths: usize,
    pub seed: u64,
    pub rate: f64,
    pub mean_discounted_claims: f64,
    pub std_error: f64,
    /// `(probability, value)` pairs of the discounted claim total.
    pub quantiles: Vec<(f64, f64)>,
    /// Share of all (path, period) pairs with a positive payout.
    pub payout_fraction: f64,
}

pub const SETTLEMENT_QUANTILES: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

/// Settles the contract along `n_paths` simulated paths and summarises the
/// discounted claim totals (discounted at the contract rate).
pub fn settlement_study(
    spec: &ContractSpec,
    measure: Measure,
    n_paths: usize,
    seed: u64,
) -> Result<SettlementStats> {
    spec.validate()?;
    if n_paths < 2 {
        return Err(Error::Validation(format!("n_paths must be >= 2, got {n_paths}")));
    }
    let rate = spec.rate();
    let times = spec.settlement_times();
    let drift = match measure {
        Measure::RiskNeutral => rate,
        Measure::Physical | Measure::Trend => -spec.beta,
    };
    let stepper = LogStepper::new(drift, spec.sigma, &times)?;

    let per_block: Vec<(RunningStats, Vec<f64>, usize)> = rng::blocks(n_paths)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(block, start, len)| -> Result<_> {
            let mut rng = rng::stream(seed, block);
            let mut stats = RunningStats::new();
            let mut totals = Vec::with_capacity(len);
            let mut paid = 0;
            for k in 0..len {
                let prices = match measure {
                    Measure::Trend => times.iter().map(|&t| spec.strike(t)).collect(),
                    _ => {
                        let mut prices = Vec::with_capacity(times.len());
                        stepper.walk(spec.s0, &mut rng, |_, p| prices.push(p));
                        prices
                    }
                };
                let path = PricePath {
                    times: times.clone(),
                    prices,
                    seed: seed.wrapping_add((start + k) as u64),
                };
                let flows = settle_contract(spec, &path, 0.0)?;
                let total = flows.discounted_claims(rate);
                paid += flows.periods_with_payout();
                stats.push(total);
                totals.push(total);
            }
            Ok((stats, totals, paid))
        })
        .collect::<Result<_>>()?;

    let mut stats = RunningStats::new();
    let mut totals = Vec::with_capacity(n_paths);
    let mut paid = 0usize;
    for (s, t, p) in &per_block {
        stats.merge(s);
        totals.extend_from_slice(t);
        paid += p;
    }
    totals.sort_by(f64::total_cmp);
    let quantiles = SETTLEMENT_QUANTILES
        .iter()
        .map(|&q| (q, quantile_sorted(&totals, q)))
        .collect();

    Ok(SettlementStats {
        measure,
        n_paths,
        seed,
        rate,
        mean_discounted_claims: stats.mean(),
        std_error: stats.std_error(),
        quantiles,
        payout_fraction: paid as f64 / (n_paths * spec.n_periods) as f64,
    })
}
