//! Stylized-fact diagnostics: return autocorrelation, volatility-clustering
//! decay, and Hill tail-index estimation.

use crate::error::{Error, Result};
use crate::scaling::{fit_log_log, BoxSchedule, ScalingResult};
use crate::series::Series;

/// Sample autocorrelation at lags `0..=max_lag`.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfResult {
    pub lags: Vec<usize>,
    /// `values[0]` is exactly 1; all magnitudes are bounded by 1 up to
    /// round-off.
    pub values: Vec<f64>,
    /// Observations the estimate was computed from.
    pub n_used: usize,
}

/// Autocorrelation with global mean and lag-0 variance normalization:
/// `rho(k) = sum_t (x_t - m)(x_{t+k} - m) / sum_t (x_t - m)^2`.
pub fn acf(series: &Series, max_lag: usize) -> Result<AcfResult> {
    let n = series.len();
    if max_lag == 0 {
        return Err(Error::InvalidParameter("max_lag must be >= 1".into()));
    }
    if max_lag >= n / 2 {
        return Err(Error::InvalidParameter(format!(
            "max_lag {max_lag} must stay below length/2 = {}",
            n / 2
        )));
    }
    let m = series.mean();
    let d: Vec<f64> = series.values().iter().map(|&v| v - m).collect();
    let denom: f64 = d.iter().map(|&v| v * v).sum();
    if denom == 0.0 {
        return Err(Error::DegenerateSeries("zero variance"));
    }
    let mut lags = Vec::with_capacity(max_lag + 1);
    let mut values = Vec::with_capacity(max_lag + 1);
    for k in 0..=max_lag {
        let num: f64 = d[..n - k].iter().zip(&d[k..]).map(|(&a, &b)| a * b).sum();
        lags.push(k);
        values.push(num / denom);
    }
    Ok(AcfResult {
        lags,
        values,
        n_used: n,
    })
}

/// Power-law decay rate fitted to already-computed autocorrelation values at
/// the given positive lags; lags with nonpositive ACF are dropped. The
/// returned exponent is positive for decaying correlations
/// (`acf ~ lag^-exponent`).
pub fn fit_acf_power_law(lags: &[usize], values: &[f64]) -> Result<ScalingResult> {
    if lags.len() != values.len() {
        return Err(Error::InvalidParameter(format!(
            "{} lags vs {} values",
            lags.len(),
            values.len()
        )));
    }
    let mut kept_lags = Vec::new();
    let mut kept_values = Vec::new();
    for (&lag, &v) in lags.iter().zip(values) {
        if lag > 0 && v > 0.0 {
            kept_lags.push(lag);
            kept_values.push(v);
        }
    }
    if kept_lags.len() < 3 {
        return Err(Error::InsufficientData {
            need: 3,
            got: kept_lags.len(),
        });
    }
    let xs: Vec<f64> = kept_lags.iter().map(|&l| l as f64).collect();
    let fit = fit_log_log(&xs, &kept_values)?;
    Ok(ScalingResult {
        sizes: kept_lags,
        statistic: kept_values,
        exponent: -fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
    })
}

/// Volatility-clustering decay: the power law of `acf(|x|)` over the
/// scheduled lags, using only lags where the ACF is positive.
pub fn volatility_clustering_exponent(
    series: &Series,
    schedule: &BoxSchedule,
) -> Result<ScalingResult> {
    let abs = Series::new(series.values().iter().map(|v| v.abs()).collect())
        .expect("|x| of a valid series is valid");
    let max_lag = *schedule.sizes().last().expect("schedule is nonempty");
    let result = acf(&abs, max_lag)?;
    let values: Vec<f64> = schedule.sizes().iter().map(|&k| result.values[k]).collect();
    fit_acf_power_law(schedule.sizes(), &values)
}

/// Which side of the return distribution a tail fit used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    Positive,
    Negative,
}

impl TailSide {
    pub fn label(&self) -> &'static str {
        match self {
            TailSide::Positive => "positive",
            TailSide::Negative => "negative",
        }
    }
}

/// Hill estimate of the tail index on one side of the distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub alpha: f64,
    /// Order statistics entering the estimate.
    pub k_used: usize,
    pub side: TailSide,
}

/// Hill estimator over the top `k = ceil(tail_fraction * side count)` order
/// statistics of the chosen side's magnitudes:
/// `alpha = k / sum_i ln(x_(i) / x_(k+1))`.
pub fn tail_exponent(
    returns: &crate::series::ReturnSeries,
    tail_fraction: f64,
    side: TailSide,
) -> Result<TailFit> {
    if !(tail_fraction > 0.0 && tail_fraction <= 0.2) {
        return Err(Error::InvalidParameter(format!(
            "tail_fraction must lie in (0, 0.2], got {tail_fraction}"
        )));
    }
    let mut magnitudes: Vec<f64> = returns
        .values()
        .iter()
        .filter_map(|&v| match side {
            TailSide::Positive if v > 0.0 => Some(v),
            TailSide::Negative if v < 0.0 => Some(-v),
            _ => None,
        })
        .collect();
    let n_side = magnitudes.len();
    let need = (10.0 / tail_fraction).ceil() as usize;
    if n_side < need {
        return Err(Error::InsufficientData {
            need,
            got: n_side,
        });
    }
    let k = (tail_fraction * n_side as f64).ceil() as usize;
    magnitudes.sort_by(|a, b| b.total_cmp(a));
    let threshold = magnitudes[k];
    let sum: f64 = magnitudes[..k]
        .iter()
        .map(|&x| libm::log(x / threshold))
        .sum();
    if sum == 0.0 {
        return Err(Error::DegenerateTail { k });
    }
    Ok(TailFit {
        alpha: k as f64 / sum,
        k_used: k,
        side,
    })
}
