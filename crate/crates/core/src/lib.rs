//! Pricing engine for insurance contracts that indemnify a cloud-storage
//! purchaser whenever the market unit price rises above its expected
//! exponential-decay trend.
//!
//! The contract pays `max(S(tᵢ) − P₀·e^(−β·tᵢ), 0)` at each monthly renewal
//! `tᵢ`, so it is a strip of European calls with a decaying strike. Under a
//! geometric Brownian motion price model each call has a Black-Scholes value
//!
//! ```text
//! V(tᵢ) = S(0)·[Φ(d₁) − e^(−(β+r)·tᵢ)·Φ(d₂)]
//! d₁,₂  = (r + β ± σ²/2)·√tᵢ / σ
//! ```
//!
//! and the premium is the sum of those values over the covered periods.
//!
//! Modules:
//!
//! - [`market_model`]: price series, trend fitting, volatility estimation
//!   and seeded GBM path simulation.
//! - [`pricing`]: normal CDF, Black-Scholes call, rate curves and the
//!   multiperiod premium.
//! - [`risk`]: claim payoffs, cash-flow schedules and settlement replay.
//! - [`oracle`]: Monte Carlo pricer used to cross-check the closed form.
//! - [`scenarios`]: the reference study (premium table, monthly curve,
//!   volatility and duration sweeps).
//! - [`cli`]: the `storage-insure` command-line front end.
//!
//! ```
//! use storage_insurance::pricing::{contract_premium, ContractSpec, RateCurve};
//!
//! let spec = ContractSpec::monthly(1.0, 0.438, 0.0663, 12, RateCurve::flat(0.002)).unwrap();
//! let schedule = contract_premium(&spec).unwrap();
//! assert!((schedule.total_normalized - 2.469).abs() < 0.005);
//! ```

pub mod cli;
pub mod error;
pub mod market_model;
pub mod numeric;
pub mod oracle;
pub mod pricing;
pub mod risk;
pub mod rng;
pub mod scenarios;

pub use error::{Error, Result};
