//! Quote the premium of a one-year consumer contract at the average
//! consumer price, month by month.
//!
//! ```bash
//! cargo run -p storage-insurance --example quote_contract
//! ```

use storage_insurance::pricing::{black_scholes_call, contract_premium, ContractSpec, RateCurve};
use storage_insurance::scenarios::{CONSUMER_AVERAGE_PRICE, CONSUMER_SIGMA};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ContractSpec::monthly(
        CONSUMER_AVERAGE_PRICE,
        0.438,
        CONSUMER_SIGMA,
        12,
        RateCurve::treasury_reference(),
    )?;
    let schedule = contract_premium(&spec)?;

    println!("spot {:.4} EUR/GB/month, rate {:.2}%", spec.s0, 100.0 * schedule.rate);
    println!("{:>5} {:>9} {:>9} {:>11}", "month", "strike", "premium", "bs check");
    for p in &schedule.per_period {
        let strike = spec.strike(p.t);
        let bs = black_scholes_call(spec.s0, strike, schedule.rate, spec.sigma, p.t)?;
        println!("{:>5} {:>9.5} {:>9.5} {:>11.2e}", p.index, strike, p.premium, p.premium - bs);
    }
    println!(
        "total premium {:.5} EUR/GB ({:.3} months of storage)",
        schedule.total, schedule.total_normalized
    );
    Ok(())
}
