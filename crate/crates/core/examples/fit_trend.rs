//! Fit the exponential price trend and a log-return volatility to a weekly
//! price history read from `date,price` CSV.
//!
//! ```bash
//! cargo run -p storage-insurance --example fit_trend [prices.csv]
//! ```
//!
//! Without an argument a synthetic five-year weekly series is generated.

use storage_insurance::market_model::{
    estimate_volatility, fit_exponential_trend, simulate_gbm_path, GbmParams, PriceSeries,
    REFERENCE_BETA,
};

fn synthetic_csv() -> String {
    let params = GbmParams::new(0.1, REFERENCE_BETA, 0.1).unwrap();
    let times: Vec<f64> = (1..=260).map(|k| (7 * k) as f64 / 365.25).collect();
    let path = simulate_gbm_path(&params, &times, 2012).unwrap();
    let start = chrono::NaiveDate::from_ymd_opt(2006, 1, 2).unwrap();
    let mut csv = format!("date,price\n{start},0.1\n");
    for (k, p) in path.prices.iter().enumerate() {
        let date = start + chrono::Duration::days(7 * (k as i64 + 1));
        csv.push_str(&format!("{date},{p:.6}\n"));
    }
    csv
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let series = match std::env::args().nth(1) {
        Some(path) => PriceSeries::from_csv_path(path)?,
        None => PriceSeries::from_csv_reader(synthetic_csv().as_bytes())?,
    };

    let trend = fit_exponential_trend(&series)?;
    println!("observations : {}", series.len());
    println!("p0           : {:.5}", trend.p0);
    println!("beta         : {:.4} /year", trend.beta);
    println!("half-life    : {:.2} years", std::f64::consts::LN_2 / trend.beta);
    match estimate_volatility(&series) {
        Ok(sigma) => println!("volatility   : {sigma:.4} /sqrt(year)"),
        Err(e) => println!("volatility   : n/a ({e})"),
    }
    for years in [1.0, 3.0, 5.0] {
        println!("E[P({years})]      : {:.5}", trend.expected_price(years)?);
    }
    Ok(())
}
