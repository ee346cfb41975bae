use serde::{Deserialize, Serialize};

use super::PriceSeries;
use crate::error::{self, Error, Result};
use crate::numeric::least_squares_line;

/// Decay rate of disk prices measured from weekly SATA price surveys (1/years).
pub const REFERENCE_BETA: f64 = 0.438;

/// Expected-price curve `P(t) = p0·e^(−beta·t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendParams {
    /// Price at `t = 0`, currency/GB/month.
    pub p0: f64,
    /// Decay rate in 1/years; negative for a rising market.
    pub beta: f64,
}

impl TrendParams {
    pub fn new(p0: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            p0: error::positive("p0", p0)?,
            beta: error::finite("beta", beta)?,
        })
    }

    pub fn expected_price(&self, t: f64) -> Result<f64> {
        expected_price(self, t)
    }
}

/// `E[P(t)] = p0·e^(−beta·t)`, which is also the strike of the period-`t`
/// claim.
pub fn expected_price(trend: &TrendParams, t: f64) -> Result<f64> {
    let t = error::non_negative("t", t)?;
    Ok(trend.p0 * (-trend.beta * t).exp())
}

/// Fits `ln P = ln p0 − beta·t` by ordinary least squares.
pub fn fit_exponential_trend(series: &PriceSeries) -> Result<TrendParams> {
    if series.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 observations, got {}",
            series.len()
        )));
    }
    let times = series.times();
    let log_prices: Vec<f64> = series.prices().iter().map(|p| p.ln()).collect();
    let (intercept, slope) = least_squares_line(&times, &log_prices)
        .ok_or_else(|| Error::Fit("observation times have zero spread".into()))?;
    TrendParams::new(intercept.exp(), -slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_price_values() {
        let tr = TrendParams::new(1.0, REFERENCE_BETA).unwrap();
        assert_eq!(tr.expected_price(0.0).unwrap(), 1.0);
        assert!((tr.expected_price(1.0).unwrap() - 0.645_325_782_857_294_6).abs() < 1e-12);
        let flat = TrendParams::new(0.0955, 0.0).unwrap();
        assert_eq!(flat.expected_price(7.0).unwrap(), 0.0955);
        assert!(tr.expected_price(-0.1).is_err());
    }

    #[test]
    fn trend_params_validation() {
        assert!(TrendParams::new(0.0, 0.1).is_err());
        assert!(TrendParams::new(1.0, f64::NAN).is_err());
        assert!(TrendParams::new(1.0, -0.3).is_ok());
    }

    #[test]
    fn noiseless_fit_recovers_parameters() {
        let times: Vec<f64> = (0..=10).map(|k| k as f64 * 0.5).collect();
        let prices: Vec<f64> = times.iter().map(|t| 0.1 * (-0.438 * t).exp()).collect();
        let fit = fit_exponential_trend(&PriceSeries::from_points(&times, &prices).unwrap()).unwrap();
        assert!((fit.p0 - 0.1).abs() / 0.1 < 1e-9);
        assert!((fit.beta - 0.438).abs() / 0.438 < 1e-9);
    }

    #[test]
    fn flat_series_has_zero_decay() {
        let s = PriceSeries::from_points(&[0.0, 1.0, 2.0], &[0.2, 0.2, 0.2]).unwrap();
        let fit = fit_exponential_trend(&s).unwrap();
        assert!((fit.p0 - 0.2).abs() < 1e-15);
        assert!(fit.beta.abs() < 1e-15);
    }

    #[test]
    fn single_point_cannot_be_fitted() {
        let s = PriceSeries::from_points(&[0.0], &[0.2]).unwrap();
        assert!(matches!(fit_exponential_trend(&s), Err(Error::Fit(_))));
    }
}
