use serde::{Deserialize, Serialize};

use super::{std_normal_cdf, RateCurve};
use crate::error::{self, Error, Result};
use crate::market_model::{GbmParams, TrendParams};
use crate::numeric::CompensatedSum;

/// One month, in years.
pub const MONTH: f64 = 1.0 / 12.0;

/// A multiperiod insurance contract: the insured pays a premium at `t = 0`
/// and is indemnified at `tᵢ = i·period_length`, `i = 1..=n_periods`, for
/// any excess of the market price over `s0·e^(−beta·tᵢ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractSpec {
    pub s0: f64,
    pub beta: f64,
    pub sigma: f64,
    pub n_periods: usize,
    pub period_length: f64,
    pub rate_curve: RateCurve,
}

impl ContractSpec {
    pub fn new(
        s0: f64,
        beta: f64,
        sigma: f64,
        n_periods: usize,
        period_length: f64,
        rate_curve: RateCurve,
    ) -> Result<Self> {
        let spec = Self {
            s0,
            beta,
            sigma,
            n_periods,
            period_length,
            rate_curve,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Contract with monthly settlement.
    pub fn monthly(
        s0: f64,
        beta: f64,
        sigma: f64,
        n_periods: usize,
        rate_curve: RateCurve,
    ) -> Result<Self> {
        Self::new(s0, beta, sigma, n_periods, MONTH, rate_curve)
    }

    pub fn validate(&self) -> Result<()> {
        error::positive("s0", self.s0)?;
        error::finite("beta", self.beta)?;
        error::positive("sigma", self.sigma)?;
        error::positive("period_length", self.period_length)?;
        if self.n_periods == 0 {
            return Err(Error::Validation("n_periods must be at least 1".into()));
        }
        Ok(())
    }

    /// Contract horizon `n·period_length` in years.
    pub fn maturity(&self) -> f64 {
        self.settlement_time(self.n_periods)
    }

    /// The single rate applied to every period: the curve read at maturity.
    pub fn rate(&self) -> f64 {
        self.rate_curve.rate_at(self.maturity())
    }

    pub fn settlement_time(&self, i: usize) -> f64 {
        i as f64 * self.period_length
    }

    /// `t₁, …, tₙ`.
    pub fn settlement_times(&self) -> Vec<f64> {
        (1..=self.n_periods).map(|i| self.settlement_time(i)).collect()
    }

    /// Claim threshold at `t`: the expected price `s0·e^(−beta·t)`.
    pub fn strike(&self, t: f64) -> f64 {
        self.s0 * (-self.beta * t).exp()
    }

    pub fn trend(&self) -> Result<TrendParams> {
        TrendParams::new(self.s0, self.beta)
    }

    pub fn gbm(&self) -> Result<GbmParams> {
        GbmParams::new(self.s0, self.beta, self.sigma)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n_periods {
            return Err(Error::Validation(format!(
                "period index {i} outside 1..={}",
                self.n_periods
            )));
        }
        Ok(())
    }
}

/// Normalized single-period value `Φ(d₁) − e^(−(β+r)·t)·Φ(d₂)` with
/// `d₁,₂ = (r + β ± σ²/2)·√t / σ`.
///
/// Inputs are not validated; `sigma` and `t` must be positive.
pub fn premium_factor(beta: f64, rate: f64, sigma: f64, t: f64) -> f64 {
    let sqrt_t = t.sqrt();
    let drift = rate + beta;
    let half_var = 0.5 * sigma * sigma;
    let d1 = (drift + half_var) / sigma * sqrt_t;
    let d2 = (drift - half_var) / sigma * sqrt_t;
    std_normal_cdf(d1) - (-drift * t).exp() * std_normal_cdf(d2)
}

/// Fair value at `t = 0` of the claim settled at `tᵢ`.
pub fn period_premium(spec: &ContractSpec, i: usize) -> Result<f64> {
    spec.validate()?;
    spec.check_index(i)?;
    let t = spec.settlement_time(i);
    Ok(spec.s0 * premium_factor(spec.beta, spec.rate(), spec.sigma, t))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodPremium {
    pub index: usize,
    pub t: f64,
    pub premium: f64,
    pub normalized: f64,
}

/// Per-period values and the total premium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PremiumSchedule {
    pub s0: f64,
    pub rate: f64,
    pub per_period: Vec<PeriodPremium>,
    /// Compensated sum of `per_period` premiums in ascending period order.
    pub total: f64,
    /// `total / s0`.
    pub total_normalized: f64,
}

/// Prices every period and sums them.
pub fn contract_premium(spec: &ContractSpec) -> Result<PremiumSchedule> {
    spec.validate()?;
    let rate = spec.rate();
    let per_period: Vec<PeriodPremium> = (1..=spec.n_periods)
        .map(|index| {
            let t = spec.settlement_time(index);
            let normalized = premium_factor(spec.beta, rate, spec.sigma, t);
            PeriodPremium {
                index,
                t,
                premium: spec.s0 * normalized,
                normalized,
            }
        })
        .collect();
    let total = per_period
        .iter()
        .map(|p| p.premium)
        .collect::<CompensatedSum>()
        .value();
    Ok(PremiumSchedule {
        s0: spec.s0,
        rate,
        total_normalized: total / spec.s0,
        total,
        per_period,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consumer(n: usize, rate: f64) -> ContractSpec {
        ContractSpec::monthly(1.0, 0.438, 0.0663, n, RateCurve::flat(rate)).unwrap()
    }

    #[test]
    fn reference_monthly_values() {
        let one_year = consumer(12, 0.002);
        assert!((period_premium(&one_year, 1).unwrap() - 0.036).abs() < 0.001);
        assert!((period_premium(&one_year, 12).unwrap() - 0.356).abs() < 0.002);
        let five_year = consumer(60, 0.0099);
        let last = period_premium(&five_year, 60).unwrap();
        assert!((0.89..=0.90).contains(&last), "{last}");
    }

    #[test]
    fn reference_totals() {
        let s = contract_premium(&consumer(12, 0.002)).unwrap();
        assert!((s.total_normalized - 2.469).abs() < 0.005);
        let business =
            ContractSpec::monthly(1.0, 0.438, 0.145, 60, RateCurve::flat(0.0099)).unwrap();
        let s = contract_premium(&business).unwrap();
        assert!((s.total_normalized - 36.516).abs() < 0.05);
    }

    #[test]
    fn single_period_contract() {
        let spec = consumer(1, 0.002);
        let s = contract_premium(&spec).unwrap();
        assert_eq!(s.per_period.len(), 1);
        assert_eq!(s.total, period_premium(&spec, 1).unwrap());
    }

    #[test]
    fn index_and_spec_validation() {
        let spec = consumer(12, 0.002);
        assert!(period_premium(&spec, 0).is_err());
        assert!(period_premium(&spec, 13).is_err());
        assert!(ContractSpec::monthly(1.0, 0.438, 0.0, 12, RateCurve::flat(0.0)).is_err());
        assert!(ContractSpec::monthly(1.0, 0.438, 0.1, 0, RateCurve::flat(0.0)).is_err());
        assert!(ContractSpec::new(1.0, 0.438, 0.1, 3, 0.0, RateCurve::flat(0.0)).is_err());
        let mut bad = spec.clone();
        bad.s0 = -1.0;
        assert!(contract_premium(&bad).is_err());
    }

    #[test]
    fn rate_read_at_maturity() {
        let curve = RateCurve::treasury_reference();
        let three = ContractSpec::monthly(1.0, 0.438, 0.0663, 36, curve.clone()).unwrap();
        assert!((three.rate() - 0.00595).abs() < 1e-15);
        let half = ContractSpec::monthly(1.0, 0.438, 0.0663, 6, curve).unwrap();
        assert_eq!(half.rate(), 0.002);
    }

    #[test]
    fn normalized_fields_are_consistent() {
        let spec = ContractSpec::monthly(0.0955, 0.438, 0.0663, 12, RateCurve::flat(0.002)).unwrap();
        let s = contract_premium(&spec).unwrap();
        assert!((s.total_normalized - s.total / 0.0955).abs() < 1e-15);
        for p in &s.per_period {
            assert!(p.premium >= 0.0);
            assert_eq!(p.premium, 0.0955 * p.normalized);
        }
    }
}
