//! Price-trend and stochastic price models.
//!
//! Storage prices are expected to decay as `P(t) = P₀·e^(−β·t)` and to
//! fluctuate around that trend as a geometric Brownian motion
//!
//! ```text
//! P(t) = P₀·exp((−β − σ²/2)·t + σ·W(t))
//! ```
//!
//! so that `E[P(t)]` is exactly the trend curve.

mod gbm;
mod series;
mod trend;
mod volatility;

pub use gbm::{simulate_gbm_path, simulate_risk_neutral_path, GbmParams, LogStepper, PricePath};
pub use series::{Observation, PriceSeries, DAYS_PER_YEAR};
pub use trend::{expected_price, fit_exponential_trend, TrendParams, REFERENCE_BETA};
pub use volatility::{estimate_volatility, VolatilitySource};
