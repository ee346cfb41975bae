use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{self, Result};
use crate::rng::{self, standard_normal};

/// Geometric Brownian motion parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbmParams {
    /// Spot price `S(0)`, currency/GB/month.
    pub s0: f64,
    /// Trend decay rate (1/years). The physical drift is `−beta`.
    pub beta: f64,
    /// Volatility (1/√years), strictly positive.
    pub sigma: f64,
}

impl GbmParams {
    pub fn new(s0: f64, beta: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            s0: error::positive("s0", s0)?,
            beta: error::finite("beta", beta)?,
            sigma: error::positive("sigma", sigma)?,
        })
    }
}

/// One simulated realization of the price process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PricePath {
    pub times: Vec<f64>,
    pub prices: Vec<f64>,
    pub seed: u64,
}

impl PricePath {
    /// Price observed at exactly `t` (relative tolerance 1e-12), if sampled.
    pub fn price_at(&self, t: f64) -> Option<f64> {
        let tol = 1e-12 * t.abs().max(1.0);
        let k = self.times.partition_point(|&s| s < t - tol);
        match self.times.get(k) {
            Some(&s) if (s - t).abs() <= tol => Some(self.prices[k]),
            _ => None,
        }
    }
}

/// Exact log-normal transition from `0` through each grid time.
///
/// Step `k` adds `(drift − σ²/2)·Δt_k + σ·√Δt_k·Z_k` to the log price.
#[derive(Debug, Clone)]
pub struct LogStepper {
    means: Vec<f64>,
    scales: Vec<f64>,
}

impl LogStepper {
    pub fn new(drift: f64, sigma: f64, times: &[f64]) -> Result<Self> {
        error::settlement_times(times)?;
        let mut prev = 0.0;
        let mut means = Vec::with_capacity(times.len());
        let mut scales = Vec::with_capacity(times.len());
        for &t in times {
            let dt = t - prev;
            means.push((drift - 0.5 * sigma * sigma) * dt);
            scales.push(sigma * dt.sqrt());
            prev = t;
        }
        Ok(Self { means, scales })
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    /// Walks one path, calling `visit(step, price)` at every grid time.
    #[inline]
    pub fn walk<R: Rng + ?Sized>(&self, s0: f64, rng: &mut R, mut visit: impl FnMut(usize, f64)) {
        let mut log_price = s0.ln();
        for (k, (&m, &s)) in self.means.iter().zip(&self.scales).enumerate() {
            log_price += m + s * standard_normal(rng);
            visit(k, log_price.exp());
        }
    }
}

fn simulate(s0: f64, drift: f64, sigma: f64, times: &[f64], seed: u64) -> Result<PricePath> {
    let stepper = LogStepper::new(drift, sigma, times)?;
    let mut prices = Vec::with_capacity(times.len());
    stepper.walk(s0, &mut rng::stream(seed, 0), |_, p| prices.push(p));
    Ok(PricePath {
        times: times.to_vec(),
        prices,
        seed,
    })
}

/// Samples the physical price process (drift `−beta`) at `times`.
///
/// The same `(params, times, seed)` always yields a bit-identical path.
pub fn simulate_gbm_path(params: &GbmParams, times: &[f64], seed: u64) -> Result<PricePath> {
    simulate(params.s0, -params.beta, params.sigma, times, seed)
}

/// Samples the risk-neutral price process (drift `rate`) at `times`.
pub fn simulate_risk_neutral_path(
    params: &GbmParams,
    rate: f64,
    times: &[f64],
    seed: u64,
) -> Result<PricePath> {
    let rate = error::finite("rate", rate)?;
    simulate(params.s0, rate, params.sigma, times, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, dt: f64) -> Vec<f64> {
        (1..=n).map(|k| k as f64 * dt).collect()
    }

    #[test]
    fn degenerate_sigma_follows_trend() {
        let p = GbmParams::new(1.0, 0.438, 1e-12).unwrap();
        let times = grid(60, 1.0 / 12.0);
        let path = simulate_gbm_path(&p, &times, 3).unwrap();
        for (t, s) in path.times.iter().zip(&path.prices) {
            let expected = (-0.438 * t).exp();
            assert!((s - expected).abs() / expected < 1e-6);
        }
        let rn = simulate_risk_neutral_path(&p, 0.002, &times, 3).unwrap();
        for (t, s) in rn.times.iter().zip(&rn.prices) {
            let expected = (0.002 * t).exp();
            assert!((s - expected).abs() / expected < 1e-6);
        }
    }

    #[test]
    fn same_seed_same_path() {
        let p = GbmParams::new(0.1, 0.438, 0.145).unwrap();
        let times = grid(24, 1.0 / 12.0);
        let a = simulate_gbm_path(&p, &times, 42).unwrap();
        let b = simulate_gbm_path(&p, &times, 42).unwrap();
        let c = simulate_gbm_path(&p, &times, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.prices, c.prices);
        assert!(a.prices.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn rejects_bad_grids() {
        let p = GbmParams::new(1.0, 0.438, 0.1).unwrap();
        assert!(simulate_gbm_path(&p, &[], 1).is_err());
        assert!(simulate_gbm_path(&p, &[0.0, 1.0], 1).is_err());
        assert!(simulate_gbm_path(&p, &[0.5, 0.5], 1).is_err());
        assert!(simulate_gbm_path(&p, &[1.0, 0.5], 1).is_err());
        assert!(GbmParams::new(1.0, 0.438, 0.0).is_err());
        assert!(GbmParams::new(-1.0, 0.438, 0.1).is_err());
    }

    #[test]
    fn price_lookup_is_exact() {
        let path = PricePath {
            times: vec![0.25, 0.5, 0.75],
            prices: vec![1.0, 2.0, 3.0],
            seed: 0,
        };
        assert_eq!(path.price_at(0.5), Some(2.0));
        assert_eq!(path.price_at(6.0 / 12.0), Some(2.0));
        assert_eq!(path.price_at(0.6), None);
        assert_eq!(path.price_at(1.0), None);
    }
}
