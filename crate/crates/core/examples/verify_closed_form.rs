//! Cross-check the closed-form premium against Monte Carlo, per period and
//! for the whole contract.
//!
//! ```bash
//! cargo run --release -p storage-insurance --example verify_closed_form
//! ```

use storage_insurance::oracle::{mc_contract_price, mc_period_price};
use storage_insurance::pricing::{contract_premium, period_premium};
use storage_insurance::scenarios::ScenarioConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = 2012;
    for cfg in [ScenarioConfig::consumer(1.0), ScenarioConfig::business(5.0)] {
        let spec = cfg.contract()?;
        println!("{} {} year(s), rate {:.2}%", cfg.label, cfg.duration_years, 100.0 * spec.rate());

        for i in [1, spec.n_periods / 2, spec.n_periods] {
            let exact = period_premium(&spec, i)?;
            let mc = mc_period_price(&spec, i, 200_000, seed)?;
            println!(
                "  period {i:>2}: closed {exact:.5}  mc {:.5} ± {:.5}  z {:+.2}",
                mc.mean,
                mc.std_error,
                mc.z_score(exact)
            );
        }

        let exact = contract_premium(&spec)?.total;
        let mc = mc_contract_price(&spec, 1_000_000, seed)?;
        let (lo, hi) = mc.confidence_interval_at(0.99);
        println!(
            "  contract : closed {exact:.4}  mc {:.4} (99% CI {lo:.4}..{hi:.4})  z {:+.2}\n",
            mc.mean,
            mc.z_score(exact)
        );
    }
    Ok(())
}
