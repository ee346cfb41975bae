use serde::{Deserialize, Serialize};

use super::PriceSeries;
use crate::error::{self, Error, Result};

/// Where a volatility figure comes from.
///
/// `CrossSectional` passes through a dispersion of provider prices taken
/// as σ directly (how the reference premiums were computed, even though a
/// price dispersion is in currency units rather than 1/√years).
/// `LogReturns` annualizes the sample standard deviation of log returns of
/// a uniformly spaced time series.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum VolatilitySource {
    CrossSectional { dispersion: f64 },
    LogReturns(PriceSeries),
}

impl VolatilitySource {
    pub fn resolve(&self) -> Result<f64> {
        match self {
            VolatilitySource::CrossSectional { dispersion } => {
                error::non_negative("dispersion", *dispersion)
            }
            VolatilitySource::LogReturns(series) => estimate_volatility(series),
        }
    }
}

/// Relative tolerance on sampling intervals for the series to count as uniform.
const SPACING_TOLERANCE: f64 = 1e-9;

/// Annualized volatility: sample std of `ln(Pᵢ₊₁/Pᵢ)` divided by `√Δt`.
pub fn estimate_volatility(series: &PriceSeries) -> Result<f64> {
    if series.len() < 3 {
        return Err(Error::Validation(format!(
            "volatility estimation needs at least 3 observations, got {}",
            series.len()
        )));
    }
    let obs = series.observations();
    let span = obs[obs.len() - 1].time - obs[0].time;
    let dt = span / (obs.len() - 1) as f64;
    for w in obs.windows(2) {
        let step = w[1].time - w[0].time;
        if (step - dt).abs() > SPACING_TOLERANCE * dt {
            return Err(Error::Validation(format!(
                "observations must be uniformly spaced (found step {step:.6} vs mean {dt:.6})"
            )));
        }
    }
    let returns: Vec<f64> = obs.windows(2).map(|w| (w[1].price / w[0].price).ln()).collect();
    let n = returns.len() as f64;
    let mean = returns.iter().sum::<f64>() / n;
    let var = returns.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((var / dt).sqrt())
}
