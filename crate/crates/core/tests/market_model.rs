use proptest::prelude::*;

use storage_insurance::market_model::{
    estimate_volatility, expected_price, fit_exponential_trend, simulate_gbm_path,
    simulate_risk_neutral_path, GbmParams, PriceSeries, TrendParams,
};

/// Least squares by Cramer's rule on the raw normal equations, independent
/// of the centered-moment route used by the library.
fn cramer_fit(times: &[f64], prices: &[f64]) -> (f64, f64) {
    let n = times.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&t, &p) in times.iter().zip(prices) {
        let y = p.ln();
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
    }
    let det = n * sxx - sx * sx;
    let intercept = (sy * sxx - sx * sxy) / det;
    let slope = (n * sxy - sx * sy) / det;
    (intercept.exp(), -slope)
}

fn weekly_gbm_series(beta: f64, sigma: f64, n: usize, seed: u64) -> PriceSeries {
    let params = GbmParams::new(0.1, beta, sigma).unwrap();
    let times: Vec<f64> = (1..n).map(|k| k as f64 * 7.0 / 365.25).collect();
    let path = simulate_gbm_path(&params, &times, seed).unwrap();
    let mut t = vec![0.0];
    t.extend(path.times);
    let mut p = vec![0.1];
    p.extend(path.prices);
    PriceSeries::from_points(&t, &p).unwrap()
}

#[test]
fn noisy_fit_matches_independent_least_squares() {
    let series = weekly_gbm_series(0.438, 0.1, 300, 2024);
    let fit = fit_exponential_trend(&series).unwrap();
    let (p0, beta) = cramer_fit(&series.times(), &series.prices());
    assert!((fit.p0 - p0).abs() / p0 < 1e-9);
    assert!((fit.beta - beta).abs() < 1e-9);
    assert!((fit.beta - 0.438).abs() < 0.1, "beta = {}", fit.beta);
}

#[test]
fn physical_mean_matches_trend() {
    let params = GbmParams::new(1.0, 0.438, 0.145).unwrap();
    let n = 100_000;
    let samples: Vec<f64> = (0..n)
        .map(|seed| simulate_gbm_path(&params, &[1.0], seed).unwrap().prices[0])
        .collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let se = (var / n as f64).sqrt();
    assert!((mean - (-0.438f64).exp()).abs() <= 3.0 * se, "mean {mean} se {se}");
}

#[test]
fn risk_neutral_mean_grows_at_rate() {
    let params = GbmParams::new(1.0, 0.438, 0.145).unwrap();
    let n = 100_000;
    let samples: Vec<f64> = (0..n)
        .map(|seed| simulate_risk_neutral_path(&params, 0.002, &[0.5, 1.0], seed).unwrap().prices[1])
        .collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let se = (var / n as f64).sqrt();
    assert!((mean - 0.002f64.exp()).abs() <= 3.0 * se, "mean {mean} se {se}");
}

#[test]
fn log_price_moments() {
    let (beta, sigma, t) = (0.438, 0.3, 2.0);
    let params = GbmParams::new(1.0, beta, sigma).unwrap();
    let grid = [0.5, 1.0, 1.5, t];
    let n = 20_000;
    let logs: Vec<f64> = (0..n)
        .map(|seed| simulate_gbm_path(&params, &grid, seed).unwrap().prices[3].ln())
        .collect();
    let mean = logs.iter().sum::<f64>() / n as f64;
    let var = logs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let expected_mean = (-beta - 0.5 * sigma * sigma) * t;
    let expected_var = sigma * sigma * t;
    assert!((mean - expected_mean).abs() <= 4.0 * (var / n as f64).sqrt());
    assert!((var - expected_var).abs() / expected_var < 0.10);
}

#[test]
fn volatility_estimate_recovers_generator() {
    let series = weekly_gbm_series(0.438, 0.145, 10_001, 99);
    let est = estimate_volatility(&series).unwrap();
    assert!((est - 0.145).abs() / 0.145 < 0.05, "estimate {est}");
}

proptest! {
    #[test]
    fn noiseless_fit_is_exact(p0 in 0.001f64..10.0, beta in -1.0f64..2.0, n in 2usize..60, dt in 0.01f64..0.5) {
        let times: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
        let prices: Vec<f64> = times.iter().map(|t| p0 * (-beta * t).exp()).collect();
        let fit = fit_exponential_trend(&PriceSeries::from_points(&times, &prices).unwrap()).unwrap();
        prop_assert!((fit.p0 - p0).abs() / p0 < 1e-9);
        prop_assert!((fit.beta - beta).abs() < 1e-9 * beta.abs().max(1.0));
    }

    #[test]
    fn expected_price_monotone(p0 in 0.001f64..10.0, beta in 0.0f64..2.0, t in 0.0f64..20.0, dt in 0.001f64..5.0) {
        let tr = TrendParams::new(p0, beta).unwrap();
        let a = expected_price(&tr, t).unwrap();
        let b = expected_price(&tr, t + dt).unwrap();
        if beta > 0.0 { prop_assert!(b < a || b == 0.0); } else { prop_assert_eq!(a, b); }
    }

    #[test]
    fn paths_are_deterministic(seed in any::<u64>(), sigma in 0.01f64..1.0) {
        let params = GbmParams::new(0.1, 0.438, sigma).unwrap();
        let grid: Vec<f64> = (1..=24).map(|k| k as f64 / 12.0).collect();
        let a = simulate_gbm_path(&params, &grid, seed).unwrap();
        let b = simulate_gbm_path(&params, &grid, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.prices.iter().all(|p| *p > 0.0));
    }
}
