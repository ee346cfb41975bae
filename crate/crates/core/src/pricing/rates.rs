use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Continuously compounded risk-free rates by tenor.
///
/// Lookups interpolate linearly in tenor and extrapolate flat.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateCurve {
    tenors: Vec<f64>,
    rates: Vec<f64>,
}

impl RateCurve {
    pub fn new(tenors: Vec<f64>, rates: Vec<f64>) -> Result<Self> {
        if tenors.is_empty() || tenors.len() != rates.len() {
            return Err(Error::Validation(format!(
                "rate curve needs matching non-empty tenors/rates ({} vs {})",
                tenors.len(),
                rates.len()
            )));
        }
        let mut prev = 0.0;
        for &t in &tenors {
            if !t.is_finite() || t <= prev {
                return Err(Error::Validation(format!(
                    "rate curve tenors must be strictly increasing and > 0 (got {t})"
                )));
            }
            prev = t;
        }
        if let Some(r) = rates.iter().find(|r| !r.is_finite()) {
            return Err(Error::Validation(format!("rate curve has non-finite rate {r}")));
        }
        Ok(Self { tenors, rates })
    }

    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            points.iter().map(|p| p.0).collect(),
            points.iter().map(|p| p.1).collect(),
        )
    }

    /// Single-point curve returning `rate` at every tenor.
    pub fn flat(rate: f64) -> Self {
        Self {
            tenors: vec![1.0],
            rates: vec![rate],
        }
    }

    /// US Treasury yields used for the reference scenarios:
    /// 0.2% at 1 year, 0.99% at 5 years.
    pub fn treasury_reference() -> Self {
        Self {
            tenors: vec![1.0, 5.0],
            rates: vec![0.002, 0.0099],
        }
    }

    pub fn rate_at(&self, tenor: f64) -> f64 {
        let n = self.tenors.len();
        if tenor <= self.tenors[0] {
            return self.rates[0];
        }
        if tenor >= self.tenors[n - 1] {
            return self.rates[n - 1];
        }
        let k = self.tenors.partition_point(|&t| t <= tenor);
        let (t0, t1) = (self.tenors[k - 1], self.tenors[k]);
        let (r0, r1) = (self.rates[k - 1], self.rates[k]);
        r0 + (r1 - r0) * (tenor - t0) / (t1 - t0)
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.tenors.iter().copied().zip(self.rates.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_and_flat_extrapolation() {
        let c = RateCurve::treasury_reference();
        assert_eq!(c.rate_at(0.25), 0.002);
        assert_eq!(c.rate_at(1.0), 0.002);
        assert!((c.rate_at(3.0) - 0.00595).abs() < 1e-15);
        assert_eq!(c.rate_at(5.0), 0.0099);
        assert_eq!(c.rate_at(30.0), 0.0099);
        assert_eq!(RateCurve::flat(0.03).rate_at(17.0), 0.03);
    }

    #[test]
    fn exact_at_knots() {
        let c = RateCurve::from_points(&[(0.5, 0.01), (2.0, 0.02), (10.0, 0.015)]).unwrap();
        assert_eq!(c.rate_at(2.0), 0.02);
        assert!((c.rate_at(6.0) - 0.0175).abs() < 1e-15);
    }

    #[test]
    fn invalid_curves() {
        assert!(RateCurve::new(vec![], vec![]).is_err());
        assert!(RateCurve::new(vec![1.0], vec![]).is_err());
        assert!(RateCurve::new(vec![0.0], vec![0.01]).is_err());
        assert!(RateCurve::new(vec![2.0, 1.0], vec![0.01, 0.02]).is_err());
        assert!(RateCurve::new(vec![1.0], vec![f64::INFINITY]).is_err());
    }
}
