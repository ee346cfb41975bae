//! Replay a contract along one simulated price path, then settle it along
//! many paths under both the risk-neutral and the physical price law.
//!
//! ```bash
//! cargo run --release -p storage-insurance --example settle_claims
//! ```

use storage_insurance::market_model::simulate_gbm_path;
use storage_insurance::pricing::contract_premium;
use storage_insurance::risk::{settle_contract, settlement_study, Measure};
use storage_insurance::scenarios::ScenarioConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ScenarioConfig::business(1.0).contract()?;
    let premium = contract_premium(&spec)?.total;

    let path = simulate_gbm_path(&spec.gbm()?, &spec.settlement_times(), 7)?;
    let flows = settle_contract(&spec, &path, premium)?;
    println!("one path (seed 7): premium paid {premium:.4}, claims received {:.4}", flows.total_claims());
    flows.write_csv(std::io::stdout())?;

    for measure in [Measure::RiskNeutral, Measure::Physical] {
        let stats = settlement_study(&spec, measure, 100_000, 11)?;
        println!(
            "\n{measure:?}: mean discounted claims {:.4} ± {:.4} (premium {premium:.4}), \
             {:.1}% of months pay out",
            stats.mean_discounted_claims,
            stats.std_error,
            100.0 * stats.payout_fraction
        );
        for (q, v) in &stats.quantiles {
            println!("  q{:02.0}: {v:.4}", 100.0 * q);
        }
    }
    Ok(())
}
