//! The reference study: premiums for consumer and business contracts over
//! one and five years, and the monthly premium curve of a five-year contract.
//!
//! ```bash
//! cargo run -p storage-insurance --example premium_table
//! ```

use storage_insurance::scenarios::{monthly_curve, run_premium_table, ScenarioConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<10} {:>6} {:>12}", "category", "years", "premium/S0");
    for row in run_premium_table() {
        println!("{:<10} {:>6} {:>12.3}", row.category, row.years, row.total_normalized);
    }

    println!("\nmonthly premium V(t_i)/S0, five-year consumer contract");
    for (month, v) in monthly_curve(&ScenarioConfig::monthly_curve_reference())? {
        if month == 1 || month % 6 == 0 {
            println!("{month:>3}  {v:.4}  {}", "#".repeat((v * 50.0).round() as usize));
        }
    }
    Ok(())
}
