//! Premium sensitivity to volatility and to contract duration. Writes
//! plot-ready CSV files next to the current directory.
//!
//! ```bash
//! cargo run -p storage-insurance --example sensitivity_sweeps [out_dir]
//! ```

use std::fs::File;
use std::path::PathBuf;

use storage_insurance::pricing::RateCurve;
use storage_insurance::scenarios::{
    default_duration_grid, default_volatility_grid, duration_sweep, volatility_sweep,
    ScenarioConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&out_dir)?;

    let grid = default_volatility_grid();
    for years in [1.0, 5.0] {
        let sweep = volatility_sweep(&ScenarioConfig::consumer(years), &grid)?;
        println!(
            "{years}y contract: sigma {:.3} -> {:.3} raises the premium by {:.3}%",
            grid[0],
            grid[grid.len() - 1],
            100.0 * sweep.end_to_end_change()
        );
        sweep.write_csv(File::create(out_dir.join(format!("volatility_{years}y.csv")))?)?;
    }

    let sweep = duration_sweep(
        &ScenarioConfig::consumer(1.0),
        &default_duration_grid(),
        &RateCurve::treasury_reference(),
    )?;
    let first_year = sweep.log_log_slope(0.0, 1.0 + 1e-9).unwrap();
    let later = sweep.log_log_slope(1.0 - 1e-9, 5.0 + 1e-9).unwrap();
    println!("duration: log-log slope {first_year:.2} over months 1-12, {later:.2} over months 12-60");
    println!(
        "five-year premium is {:.1}x the one-year premium",
        sweep.totals[59] / sweep.totals[11]
    );
    sweep.write_csv(File::create(out_dir.join("duration.csv"))?)?;
    println!("csv written to {}", out_dir.display());
    Ok(())
}
