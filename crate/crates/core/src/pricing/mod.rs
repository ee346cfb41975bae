//! Closed-form option values and the multiperiod premium.

mod black_scholes;
mod contract;
mod normal;
mod rates;

pub use black_scholes::black_scholes_call;
pub use contract::{
    contract_premium, period_premium, premium_factor, ContractSpec, PeriodPremium, PremiumSchedule,
    MONTH,
};
pub use normal::std_normal_cdf;
pub use rates::RateCurve;
