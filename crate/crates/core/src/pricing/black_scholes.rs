use super::std_normal_cdf;
use crate::error::{self, Result};

/// European call value `S·Φ(d₁) − K·e^(−r·t)·Φ(d₂)` with
/// `d₁,₂ = (ln(S/K) + (r ± σ²/2)·t) / (σ·√t)`.
///
/// `t = 0` is rejected; callers wanting the intrinsic value compute
/// `max(S − K, 0)` themselves.
pub fn black_scholes_call(spot: f64, strike: f64, rate: f64, sigma: f64, t: f64) -> Result<f64> {
    error::positive("spot", spot)?;
    error::positive("strike", strike)?;
    error::finite("rate", rate)?;
    error::positive("sigma", sigma)?;
    error::positive("t", t)?;

    let vol_sqrt_t = sigma * t.sqrt();
    let d1 = ((spot / strike).ln() + (rate + 0.5 * sigma * sigma) * t) / vol_sqrt_t;
    let d2 = d1 - vol_sqrt_t;
    Ok(spot * std_normal_cdf(d1) - strike * (-rate * t).exp() * std_normal_cdf(d2))
}
