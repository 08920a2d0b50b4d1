//! Core series types: raw series, positive price paths, and log-returns.
//!
//! Construction is the validation boundary: no NaN or infinity gets past
//! `new`, prices must be strictly positive, and every operation downstream
//! may assume finite inputs. Dispersion uses the population convention
//! (divide by n) throughout the crate.

use crate::error::{Error, Result};

/// Uniformly sampled scalar series.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
    dt: f64,
}

impl Series {
    /// Series with unit sampling interval.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_dt(values, 1.0)
    }

    pub fn with_dt(values: Vec<f64>, dt: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { need: 1, got: 0 });
        }
        check_finite(&values)?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sampling interval must be positive and finite, got {dt}"
            )));
        }
        Ok(Series { values, dt })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }

    pub fn population_variance(&self) -> f64 {
        population_variance(&self.values)
    }

    pub fn population_std(&self) -> f64 {
        self.population_variance().sqrt()
    }
}

/// Strictly positive price path, optionally labelled.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    values: Vec<f64>,
    timestamps: Option<Vec<String>>,
}

impl PriceSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_timestamps(values, None)
    }

    pub fn with_timestamps(values: Vec<f64>, timestamps: Option<Vec<String>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { need: 1, got: 0 });
        }
        check_finite(&values)?;
        for (index, &value) in values.iter().enumerate() {
            if value <= 0.0 {
                return Err(Error::NonPositivePrice { index, value });
            }
        }
        if let Some(labels) = &timestamps {
            if labels.len() != values.len() {
                return Err(Error::InvalidParameter(format!(
                    "{} timestamps for {} prices",
                    labels.len(),
                    values.len()
                )));
            }
            if labels.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(
                    "timestamps must be strictly increasing".into(),
                ));
            }
        }
        Ok(PriceSeries { values, timestamps })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn timestamps(&self) -> Option<&[String]> {
        self.timestamps.as_deref()
    }
}

/// Log-returns at a fixed horizon of `tau` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    values: Vec<f64>,
    tau: usize,
}

impl ReturnSeries {
    pub fn new(values: Vec<f64>, tau: usize) -> Result<Self> {
        if tau == 0 {
            return Err(Error::InvalidParameter("return horizon must be >= 1".into()));
        }
        if values.is_empty() {
            return Err(Error::InsufficientData { need: 1, got: 0 });
        }
        check_finite(&values)?;
        Ok(ReturnSeries { values, tau })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Return horizon in samples.
    pub fn tau(&self) -> usize {
        self.tau
    }

    /// View as a plain series (unit sampling interval).
    pub fn to_series(&self) -> Series {
        Series {
            values: self.values.clone(),
            dt: 1.0,
        }
    }
}

impl From<ReturnSeries> for Series {
    fn from(r: ReturnSeries) -> Series {
        Series {
            values: r.values,
            dt: 1.0,
        }
    }
}

/// `r_tau(t) = ln P(t+tau) - ln P(t)` for every valid start `t`.
pub fn log_returns(prices: &PriceSeries, tau: usize) -> Result<ReturnSeries> {
    if tau == 0 {
        return Err(Error::InvalidParameter("return horizon must be >= 1".into()));
    }
    let p = prices.values();
    if p.len() <= tau {
        return Err(Error::InsufficientData {
            need: tau + 1,
            got: p.len(),
        });
    }
    let values = (0..p.len() - tau)
        .map(|t| libm::log(p[t + tau]) - libm::log(p[t]))
        .collect();
    Ok(ReturnSeries { values, tau })
}

/// Centered and scaled copy: `(x - mean) / sigma` with population `sigma`.
pub fn zscore(series: &Series) -> Result<Series> {
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            need: 2,
            got: series.len(),
        });
    }
    let m = series.mean();
    let sd = series.population_std();
    if sd == 0.0 {
        return Err(Error::DegenerateSeries("zero variance"));
    }
    let values = series.values().iter().map(|&x| (x - m) / sd).collect();
    Ok(Series {
        values,
        dt: series.dt,
    })
}

/// Sums of `k` consecutive returns over non-overlapping windows; a trailing
/// partial window is discarded. The output horizon is `tau * k`.
pub fn aggregate_returns(returns: &ReturnSeries, k: usize) -> Result<ReturnSeries> {
    if k == 0 {
        return Err(Error::InvalidParameter("aggregation width must be >= 1".into()));
    }
    if k > returns.len() {
        return Err(Error::InsufficientData {
            need: k,
            got: returns.len(),
        });
    }
    let values = returns
        .values()
        .chunks_exact(k)
        .map(|w| w.iter().sum())
        .collect();
    Ok(ReturnSeries {
        values,
        tau: returns.tau * k,
    })
}

/// `m4 / m2^2 - 3` from central population moments.
pub fn excess_kurtosis(series: &Series) -> Result<f64> {
    if series.len() < 4 {
        return Err(Error::InsufficientData {
            need: 4,
            got: series.len(),
        });
    }
    let m = series.mean();
    let n = series.len() as f64;
    let (mut m2, mut m4) = (0.0, 0.0);
    for &x in series.values() {
        let d = x - m;
        let d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    if m2 == 0.0 {
        return Err(Error::DegenerateSeries("zero variance"));
    }
    Ok(m4 / (m2 * m2) - 3.0)
}

pub(crate) fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub(crate) fn population_variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|&x| (x - m) * (x - m)).sum::<f64>() / values.len() as f64
}
