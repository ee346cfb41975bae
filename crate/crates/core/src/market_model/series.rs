use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Days per year used to convert calendar dates to fractional years.
pub const DAYS_PER_YEAR: f64 = 365.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    /// Years since the first observation.
    pub time: f64,
    /// Currency per GB per month.
    pub price: f64,
}

/// Historical unit-price observations with strictly increasing times and
/// strictly positive prices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    observations: Vec<Observation>,
}

#[derive(Deserialize)]
struct CsvRow {
    date: String,
    price: f64,
}

impl PriceSeries {
    pub fn new(observations: Vec<Observation>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::Validation("price series is empty".into()));
        }
        for (k, obs) in observations.iter().enumerate() {
            if !obs.time.is_finite() {
                return Err(Error::Validation(format!("non-finite time at row {k}")));
            }
            if !(obs.price.is_finite() && obs.price > 0.0) {
                return Err(Error::Validation(format!(
                    "price must be > 0 (row {k}: {})",
                    obs.price
                )));
            }
        }
        for (k, w) in observations.windows(2).enumerate() {
            if w[1].time <= w[0].time {
                return Err(Error::Validation(format!(
                    "times must be strictly increasing (rows {k} and {})",
                    k + 1
                )));
            }
        }
        Ok(Self { observations })
    }

    pub fn from_points(times: &[f64], prices: &[f64]) -> Result<Self> {
        if times.len() != prices.len() {
            return Err(Error::Validation(format!(
                "{} times but {} prices",
                times.len(),
                prices.len()
            )));
        }
        Self::new(
            times
                .iter()
                .zip(prices)
                .map(|(&time, &price)| Observation { time, price })
                .collect(),
        )
    }

    /// Dated prices; times become years since the first date.
    pub fn from_dated(rows: &[(NaiveDate, f64)]) -> Result<Self> {
        let Some(&(first, _)) = rows.first() else {
            return Err(Error::Validation("price series is empty".into()));
        };
        Self::new(
            rows.iter()
                .map(|&(date, price)| Observation {
                    time: (date - first).num_days() as f64 / DAYS_PER_YEAR,
                    price,
                })
                .collect(),
        )
    }

    /// Reads `date,price` CSV with ISO-8601 (`YYYY-MM-DD`) dates.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| csv_err("<input>", e))?.clone();
        if headers.len() != 2 || &headers[0] != "date" || &headers[1] != "price" {
            return Err(Error::Validation(format!(
                "expected header `date,price`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut rows = Vec::new();
        for (k, rec) in rdr.deserialize::<CsvRow>().enumerate() {
            let rec = rec.map_err(|e| csv_err("<input>", e))?;
            let date = NaiveDate::parse_from_str(&rec.date, "%Y-%m-%d").map_err(|e| {
                Error::Validation(format!("row {}: bad date `{}`: {e}", k + 1, rec.date))
            })?;
            rows.push((date, rec.price));
        }
        Self::from_dated(&rows)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(file).map_err(|e| match e {
            Error::Csv { message, .. } => Error::Csv {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.observations.iter().map(|o| o.time).collect()
    }

    pub fn prices(&self) -> Vec<f64> {
        self.observations.iter().map(|o| o.price).collect()
    }
}

fn csv_err(path: &str, e: csv::Error) -> Error {
    Error::Csv {
        path: path.to_string(),
        message: e.to_string(),
    }
}
