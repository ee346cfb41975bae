use thiserror::Error;

/// Errors produced by the pricing engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("csv error at {path}: {message}")]
    Csv { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint: "must be finite and > 0",
        })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint: "must be finite and >= 0",
        })
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint: "must be finite",
        })
    }
}

/// Checks that `times` is non-empty, strictly increasing and starts after 0.
pub(crate) fn settlement_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Validation("time grid is empty".into()));
    }
    let mut prev = 0.0;
    for (k, &t) in times.iter().enumerate() {
        if !t.is_finite() || t <= prev {
            return Err(Error::Validation(format!(
                "time grid must be strictly increasing and > 0 (index {k}: {t})"
            )));
        }
        prev = t;
    }
    Ok(())
}
