//! Long-memory diagnostics: rescaled-range analysis, detrended fluctuation
//! analysis, periodograms, and two-segment crossover fits.
//!
//! Both exponent estimators share the same shape: evaluate a per-scale
//! statistic over a geometric schedule of window sizes, then take the slope
//! of an unweighted least-squares fit in log-log coordinates. Windows use
//! non-overlapping tiling with a trailing partial window discarded, and
//! dispersion is the population standard deviation (divide by n), matching
//! the conventions in [`crate::series`].

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::series::Series;

/// Strictly increasing window sizes used for exponent fits.
///
/// Sizes are at least 4 (linear detrending needs two effective points) and,
/// relative to the series analyzed, at most length/4 so that every scale
/// averages over at least four windows. The length-dependent bound is
/// enforced when a schedule meets a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSchedule {
    sizes: Vec<usize>,
}

impl BoxSchedule {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidParameter("empty box schedule".into()));
        }
        if sizes[0] < 4 {
            return Err(Error::InvalidParameter(format!(
                "minimum box size is 4, got {}",
                sizes[0]
            )));
        }
        if sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "box sizes must be strictly increasing".into(),
            ));
        }
        Ok(BoxSchedule { sizes })
    }

    /// Geometric progression from `min_size` to `max_size` with ratio 2^(1/4),
    /// rounding to integers and dropping duplicates.
    pub fn geometric(min_size: usize, max_size: usize) -> Result<Self> {
        if min_size < 4 {
            return Err(Error::InvalidParameter(format!(
                "minimum box size is 4, got {min_size}"
            )));
        }
        if max_size < min_size {
            return Err(Error::InvalidParameter(format!(
                "max box size {max_size} below min {min_size}"
            )));
        }
        let ratio = 2f64.powf(0.25);
        let mut sizes = Vec::new();
        let mut s = min_size as f64;
        loop {
            let v = s.round() as usize;
            if v > max_size {
                break;
            }
            if sizes.last() != Some(&v) {
                sizes.push(v);
            }
            s *= ratio;
        }
        BoxSchedule::new(sizes)
    }

    /// Default schedule for a series of `len` samples: geometric from 8 to
    /// `len / 4`.
    pub fn default_for(len: usize) -> Result<Self> {
        if len / 4 < 8 {
            return Err(Error::InsufficientData { need: 32, got: len });
        }
        Self::geometric(8, len / 4)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    fn check_against(&self, len: usize) -> Result<()> {
        let max = *self.sizes.last().expect("schedule is nonempty");
        if max > len / 4 {
            return Err(Error::InvalidParameter(format!(
                "box size {max} exceeds length/4 = {} (need >= 4 windows per scale)",
                len / 4
            )));
        }
        Ok(())
    }
}

/// Memory classification of an exponent around the uncorrelated value 0.5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Persistence {
    AntiPersistent,
    Random,
    Persistent,
}

impl Persistence {
    pub fn from_exponent(h: f64) -> Self {
        if h < 0.5 {
            Persistence::AntiPersistent
        } else if h > 0.5 {
            Persistence::Persistent
        } else {
            Persistence::Random
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Persistence::AntiPersistent => "anti-persistent",
            Persistence::Random => "random",
            Persistence::Persistent => "persistent",
        }
    }
}

/// Per-scale statistics plus the fitted log-log slope.
///
/// `sizes` keeps only the usable scales (degenerate ones are skipped), so
/// every statistic is strictly positive and has a logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingResult {
    pub sizes: Vec<usize>,
    pub statistic: Vec<f64>,
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl ScalingResult {
    pub fn classify(&self) -> Persistence {
        Persistence::from_exponent(self.exponent)
    }
}

/// Slope/intercept/r² of a least-squares line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

fn ols(x: &[f64], y: &[f64]) -> LineFit {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0)
    };
    LineFit {
        slope,
        intercept,
        r_squared,
    }
}

/// Unweighted least squares of `ln y` against `ln x`; inputs must be positive.
pub fn fit_log_log(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() {
        return Err(Error::InvalidParameter(format!(
            "{} x values vs {} y values",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InsufficientScales {
            got: x.len(),
            need: 2,
        });
    }
    if x.iter().chain(y).any(|&v| v <= 0.0 || !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "log-log fit requires positive finite inputs".into(),
        ));
    }
    let lx: Vec<f64> = x.iter().map(|&v| libm::log(v)).collect();
    let ly: Vec<f64> = y.iter().map(|&v| libm::log(v)).collect();
    Ok(ols(&lx, &ly))
}

/// Average rescaled range over the `floor(T/tau)` non-overlapping windows.
///
/// Within each window the cumulative deviation from the window mean is
/// ranged (`R = max X - min X`) and scaled by the population standard
/// deviation `S`; windows with `S = 0` are skipped.
pub fn rs_statistic(series: &Series, tau: usize) -> Result<f64> {
    if tau < 2 {
        return Err(Error::InvalidParameter(format!(
            "rescaled range needs window size >= 2, got {tau}"
        )));
    }
    let x = series.values();
    if tau > x.len() {
        return Err(Error::InsufficientData {
            need: tau,
            got: x.len(),
        });
    }
    let mut sum = 0.0;
    let mut used = 0usize;
    for window in x.chunks_exact(tau) {
        let mean = window.iter().sum::<f64>() / tau as f64;
        let mut acc = 0.0;
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        let mut sq = 0.0;
        for &v in window {
            let d = v - mean;
            acc += d;
            max = max.max(acc);
            min = min.min(acc);
            sq += d * d;
        }
        let s = (sq / tau as f64).sqrt();
        if s > 0.0 {
            sum += (max - min) / s;
            used += 1;
        }
    }
    if used == 0 {
        return Err(Error::DegenerateSeries(
            "every window has zero standard deviation",
        ));
    }
    Ok(sum / used as f64)
}

/// Hurst exponent: slope of `log <R/S>(tau)` against `log tau` over the
/// schedule. Scales where every window is degenerate are skipped; at least
/// three usable scales are required.
pub fn hurst_exponent(series: &Series, schedule: &BoxSchedule) -> Result<ScalingResult> {
    per_scale_fit(series, schedule, rs_statistic)
}

/// Detrended fluctuation at one window size.
///
/// The series is integrated into the profile `Y_t = sum_{s<=t} (x_s - <x>)`,
/// the profile is tiled into `floor(T/tau)` windows, a least-squares line is
/// removed from each, and the result is the root mean squared residual over
/// all windows.
pub fn dfa_fluctuation(series: &Series, tau: usize) -> Result<f64> {
    if tau < 4 {
        return Err(Error::InvalidParameter(format!(
            "detrending needs window size >= 4, got {tau}"
        )));
    }
    let x = series.values();
    if tau > x.len() {
        return Err(Error::InsufficientData {
            need: tau,
            got: x.len(),
        });
    }
    let mean = series.mean();
    let mut profile = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    for &v in x {
        acc += v - mean;
        profile.push(acc);
    }
    // Closed-form OLS against local coordinates t = 0..tau-1; the time
    // moments are the same for every window.
    let tm = (tau as f64 - 1.0) / 2.0;
    let stt = (0..tau).map(|t| (t as f64 - tm) * (t as f64 - tm)).sum::<f64>();
    let mut total = 0.0;
    let mut windows = 0usize;
    for window in profile.chunks_exact(tau) {
        let ym = window.iter().sum::<f64>() / tau as f64;
        let sty = window
            .iter()
            .enumerate()
            .map(|(t, &y)| (t as f64 - tm) * (y - ym))
            .sum::<f64>();
        let slope = sty / stt;
        let sq = window
            .iter()
            .enumerate()
            .map(|(t, &y)| {
                let fitted = ym + slope * (t as f64 - tm);
                (y - fitted) * (y - fitted)
            })
            .sum::<f64>();
        total += sq / tau as f64;
        windows += 1;
    }
    let f = (total / windows as f64).sqrt();
    if f == 0.0 {
        return Err(Error::DegenerateSeries(
            "profile is exactly linear in every window",
        ));
    }
    Ok(f)
}

/// Fluctuation exponent: slope of `log F(tau)` against `log tau`.
pub fn dfa_exponent(series: &Series, schedule: &BoxSchedule) -> Result<ScalingResult> {
    per_scale_fit(series, schedule, dfa_fluctuation)
}

fn per_scale_fit(
    series: &Series,
    schedule: &BoxSchedule,
    stat: impl Fn(&Series, usize) -> Result<f64>,
) -> Result<ScalingResult> {
    schedule.check_against(series.len())?;
    let mut sizes = Vec::new();
    let mut statistic = Vec::new();
    let mut degenerate = None;
    for &tau in schedule.sizes() {
        match stat(series, tau) {
            Ok(v) => {
                sizes.push(tau);
                statistic.push(v);
            }
            Err(e @ Error::DegenerateSeries(_)) => degenerate = Some(e),
            Err(e) => return Err(e),
        }
    }
    if sizes.len() < 3 {
        // A series degenerate at every scheduled scale is reported as such;
        // a schedule that is merely too thin is a scale-count problem.
        return Err(match degenerate {
            Some(e) if sizes.is_empty() => e,
            _ => Error::InsufficientScales {
                got: sizes.len(),
                need: 3,
            },
        });
    }
    let xs: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    let fit = fit_log_log(&xs, &statistic)?;
    Ok(ScalingResult {
        sizes,
        statistic,
        exponent: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
    })
}

/// One-sided periodogram of the mean-removed series.
///
/// Frequencies run over `k / (n dt)` for `k = 1..=n/2`; the zero frequency
/// carries no power after mean removal and is omitted. Power is normalized
/// so the total equals the population variance (discrete Parseval identity).
/// A power-law spectrum `P ~ f^-beta` therefore shows up as slope `-beta`
/// in log-log coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
}

pub fn power_spectrum(series: &Series) -> Result<PowerSpectrum> {
    let n = series.len();
    if n < 8 {
        return Err(Error::InsufficientData { need: 8, got: n });
    }
    let mean = series.mean();
    let mut buf: Vec<Complex<f64>> = series
        .values()
        .iter()
        .map(|&v| Complex::new(v - mean, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let nf = n as f64;
    let mut frequencies = Vec::with_capacity(n / 2);
    let mut power = Vec::with_capacity(n / 2);
    for (k, c) in buf.iter().enumerate().take(n / 2 + 1).skip(1) {
        let raw = c.norm_sqr() / (nf * nf);
        let doubled = !(n.is_multiple_of(2) && k == n / 2);
        frequencies.push(k as f64 / (nf * series.dt()));
        power.push(if doubled { 2.0 * raw } else { raw });
    }
    Ok(PowerSpectrum { frequencies, power })
}

/// Two-line broken power law fitted to points already in log coordinates
/// (base 10).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSegmentFit {
    pub slope_low: f64,
    pub slope_high: f64,
    /// Abscissa where the two fitted lines intersect, in original units
    /// (10^x of the log-coordinate intersection). When the slopes are equal
    /// the lines never cross and the boundary midpoint is reported instead.
    pub crossover: f64,
    /// Number of points assigned to the low segment.
    pub split: usize,
    pub sse: f64,
}

/// Exhaustive broken-line fit: every interior split with at least three
/// points per side gets independent least-squares lines, and the split with
/// the smallest total squared residual wins (first such split on ties).
pub fn two_segment_fit(log_x: &[f64], log_y: &[f64]) -> Result<TwoSegmentFit> {
    if log_x.len() != log_y.len() {
        return Err(Error::InvalidParameter(format!(
            "{} x values vs {} y values",
            log_x.len(),
            log_y.len()
        )));
    }
    let n = log_x.len();
    if n < 6 {
        return Err(Error::InsufficientScales { got: n, need: 6 });
    }
    if log_x.iter().chain(log_y).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "log coordinates must be finite".into(),
        ));
    }
    if log_x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "log_x must be strictly increasing".into(),
        ));
    }
    let mut best: Option<(f64, usize, LineFit, LineFit)> = None;
    for split in 3..=n - 3 {
        let low = ols(&log_x[..split], &log_y[..split]);
        let high = ols(&log_x[split..], &log_y[split..]);
        let sse = sse_of(&log_x[..split], &log_y[..split], low)
            + sse_of(&log_x[split..], &log_y[split..], high);
        if best.as_ref().is_none_or(|(b, ..)| sse < *b) {
            best = Some((sse, split, low, high));
        }
    }
    let (sse, split, low, high) = best.expect("n >= 6 admits at least one split");
    let crossover = if low.slope == high.slope {
        10f64.powf((log_x[split - 1] + log_x[split]) / 2.0)
    } else {
        10f64.powf((high.intercept - low.intercept) / (low.slope - high.slope))
    };
    Ok(TwoSegmentFit {
        slope_low: low.slope,
        slope_high: high.slope,
        crossover,
        split,
        sse,
    })
}

fn sse_of(x: &[f64], y: &[f64], fit: LineFit) -> f64 {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let r = yi - (fit.intercept + fit.slope * xi);
            r * r
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_gaussian;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    // ==== independent oracles ====

    /// Literal rescaled range: cumulative deviations, range, population std,
    /// averaged over complete windows.
    fn rs_oracle(x: &[f64], tau: usize) -> f64 {
        let mut ratios = Vec::new();
        for w in 0..x.len() / tau {
            let seg = &x[w * tau..(w + 1) * tau];
            let mean = seg.iter().sum::<f64>() / tau as f64;
            let mut cum = Vec::with_capacity(tau);
            let mut acc = 0.0;
            for &v in seg {
                acc += v - mean;
                cum.push(acc);
            }
            let max = cum.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = cum.iter().cloned().fold(f64::INFINITY, f64::min);
            let var = seg.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / tau as f64;
            if var > 0.0 {
                ratios.push((max - min) / var.sqrt());
            }
        }
        ratios.iter().sum::<f64>() / ratios.len() as f64
    }

    /// DFA at one scale via explicit 2x2 normal equations on global indices.
    fn dfa_oracle(x: &[f64], tau: usize) -> f64 {
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let profile: Vec<f64> = x
            .iter()
            .scan(0.0, |acc, &v| {
                *acc += v - mean;
                Some(*acc)
            })
            .collect();
        let nw = profile.len() / tau;
        let mut total = 0.0;
        for w in 0..nw {
            let (mut s1, mut st, mut stt, mut sy, mut sty) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for k in 0..tau {
                let t = (w * tau + k) as f64;
                let y = profile[w * tau + k];
                s1 += 1.0;
                st += t;
                stt += t * t;
                sy += y;
                sty += t * y;
            }
            let det = s1 * stt - st * st;
            let a = (s1 * sty - st * sy) / det;
            let b = (stt * sy - st * sty) / det;
            let mut sq = 0.0;
            for k in 0..tau {
                let t = (w * tau + k) as f64;
                let r = profile[w * tau + k] - (a * t + b);
                sq += r * r;
            }
            total += sq / tau as f64;
        }
        (total / nw as f64).sqrt()
    }

    // ==== rescaled range ====

    #[test]
    fn rs_alternating_window() {
        let s = Series::new(vec![1.0, -1.0, 1.0, -1.0]).unwrap();
        assert_eq!(rs_statistic(&s, 4).unwrap(), 1.0);
    }

    #[test]
    fn rs_constant_series_is_degenerate() {
        let s = Series::new(vec![3.0; 32]).unwrap();
        assert!(matches!(
            rs_statistic(&s, 8),
            Err(Error::DegenerateSeries(_))
        ));
    }

    #[test]
    fn rs_matches_literal_oracle() {
        let s = gen_gaussian(64, 123).unwrap();
        for tau in [4usize, 8, 16, 32] {
            let got = rs_statistic(&s, tau).unwrap();
            let want = rs_oracle(s.values(), tau);
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn rs_ignores_partial_trailing_window() {
        let mut values = gen_gaussian(64, 9).unwrap().values().to_vec();
        let base = rs_statistic(&Series::new(values.clone()).unwrap(), 16).unwrap();
        values.extend_from_slice(&[100.0, -50.0, 3.0]);
        let padded = rs_statistic(&Series::new(values).unwrap(), 16).unwrap();
        assert_eq!(base, padded);
    }

    #[test]
    fn rs_parameter_errors() {
        let s = Series::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            rs_statistic(&s, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            rs_statistic(&s, 4),
            Err(Error::InsufficientData { .. })
        ));
    }

    // ==== DFA ====

    #[test]
    fn dfa_matches_normal_equations_oracle() {
        let s = gen_gaussian(64, 321).unwrap();
        for tau in [4usize, 8, 16] {
            let got = dfa_fluctuation(&s, tau).unwrap();
            let want = dfa_oracle(s.values(), tau);
            assert_relative_eq!(got, want, max_relative = 1e-10);
        }
    }

    #[test]
    fn dfa_piecewise_linear_profile_is_degenerate() {
        // +1 x8 then -1 x8: the profile ramps up then down, exactly linear
        // inside each tau=8 window, so every residual vanishes.
        let mut values = vec![1.0; 8];
        values.extend(vec![-1.0; 8]);
        let s = Series::new(values).unwrap();
        assert!(matches!(
            dfa_fluctuation(&s, 8),
            Err(Error::DegenerateSeries(_))
        ));
    }

    #[test]
    fn dfa_white_noise_scales_like_sqrt() {
        let s = gen_gaussian(3000, 77).unwrap();
        for tau in [8usize, 16, 32, 64] {
            let ratio = dfa_fluctuation(&s, 2 * tau).unwrap() / dfa_fluctuation(&s, tau).unwrap();
            assert!(
                (ratio - 2f64.sqrt()).abs() < 0.35,
                "F(2x{tau})/F({tau}) = {ratio}"
            );
        }
    }

    #[test]
    fn dfa_parameter_errors() {
        let s = Series::new(vec![1.0; 12]).unwrap();
        assert!(matches!(
            dfa_fluctuation(&s, 3),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            dfa_fluctuation(&s, 16),
            Err(Error::InsufficientData { .. })
        ));
    }

    // ==== schedules and exponent fits ====

    #[test]
    fn exponents_on_constant_series_are_degenerate_not_thin() {
        // Every scheduled scale fails for the same structural reason, and the
        // driver reports that reason rather than a scale-count problem.
        let s = Series::new(vec![3.0; 200]).unwrap();
        let sched = BoxSchedule::default_for(200).unwrap();
        assert!(matches!(
            hurst_exponent(&s, &sched),
            Err(Error::DegenerateSeries(_))
        ));
        assert!(matches!(
            dfa_exponent(&s, &sched),
            Err(Error::DegenerateSeries(_))
        ));
    }

    #[test]
    fn default_schedule_shape() {
        let sched = BoxSchedule::default_for(3000).unwrap();
        let sizes = sched.sizes();
        assert_eq!(sizes[0], 8);
        assert!(*sizes.last().unwrap() <= 750);
        assert!(sizes.windows(2).all(|w| w[0] < w[1]));
        // geometric spacing: consecutive ratios hover around 2^(1/4)
        for w in sizes.windows(2) {
            let r = w[1] as f64 / w[0] as f64;
            assert!((1.05..=1.45).contains(&r), "ratio {r}");
        }
    }

    #[test]
    fn schedule_validation() {
        assert!(BoxSchedule::new(vec![]).is_err());
        assert!(BoxSchedule::new(vec![3, 8]).is_err());
        assert!(BoxSchedule::new(vec![8, 8]).is_err());
        assert!(BoxSchedule::default_for(31).is_err());
        let sched = BoxSchedule::new(vec![8, 16, 64]).unwrap();
        let short = gen_gaussian(128, 0).unwrap();
        assert!(matches!(
            hurst_exponent(&short, &sched),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn white_noise_exponents_near_half() {
        let s = gen_gaussian(3000, 2).unwrap();
        let sched = BoxSchedule::default_for(s.len()).unwrap();
        let h = hurst_exponent(&s, &sched).unwrap();
        let a = dfa_exponent(&s, &sched).unwrap();
        assert!((h.exponent - 0.5).abs() < 0.12, "H = {}", h.exponent);
        assert!((a.exponent - 0.5).abs() < 0.08, "alpha = {}", a.exponent);
        assert!(h.r_squared > 0.95);
        assert!(a.r_squared > 0.95);
    }

    #[test]
    fn random_walk_hurst_near_one() {
        let s = crate::generators::gen_random_walk(3000, 4, 1.0, 0.0).unwrap();
        let sched = BoxSchedule::default_for(s.len()).unwrap();
        let h = hurst_exponent(&s, &sched).unwrap();
        assert!(h.exponent > 0.85, "H = {}", h.exponent);
        assert_eq!(h.classify(), Persistence::Persistent);
    }

    #[test]
    fn hurst_reversal_symmetry_on_exact_tiling() {
        let s = gen_gaussian(512, 6).unwrap();
        let sched = BoxSchedule::new(vec![8, 16, 32, 64, 128]).unwrap();
        let fwd = hurst_exponent(&s, &sched).unwrap();
        let mut rev = s.values().to_vec();
        rev.reverse();
        let bwd = hurst_exponent(&Series::new(rev).unwrap(), &sched).unwrap();
        assert_abs_diff_eq!(fwd.exponent, bwd.exponent, epsilon = 1e-6);
    }

    #[test]
    fn persistence_labels() {
        assert_eq!(Persistence::from_exponent(0.3), Persistence::AntiPersistent);
        assert_eq!(Persistence::from_exponent(0.5), Persistence::Random);
        assert_eq!(Persistence::from_exponent(0.7), Persistence::Persistent);
        assert_eq!(Persistence::from_exponent(0.7).label(), "persistent");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// R/S is scale-free and DFA scales linearly, so both exponents are
        /// invariant under x -> c x.
        #[test]
        fn exponents_scale_invariant(seed in 0u64..1000, c in prop::sample::select(vec![1e-3, 0.1, 3.0, 1e4])) {
            let s = gen_gaussian(256, seed).unwrap();
            let scaled = Series::new(s.values().iter().map(|&v| c * v).collect()).unwrap();
            let sched = BoxSchedule::default_for(256).unwrap();
            let h0 = hurst_exponent(&s, &sched).unwrap();
            let h1 = hurst_exponent(&scaled, &sched).unwrap();
            prop_assert!((h0.exponent - h1.exponent).abs() < 1e-10);
            let d0 = dfa_exponent(&s, &sched).unwrap();
            let d1 = dfa_exponent(&scaled, &sched).unwrap();
            prop_assert!((d0.exponent - d1.exponent).abs() < 1e-10);
            for (f0, f1) in d0.statistic.iter().zip(&d1.statistic) {
                prop_assert!((f1 / f0 / c - 1.0).abs() < 1e-9);
            }
        }

        /// The profile subtracts the mean, so DFA ignores level shifts.
        #[test]
        fn dfa_shift_invariant(seed in 0u64..1000, b in -1e3f64..1e3) {
            let s = gen_gaussian(256, seed).unwrap();
            let shifted = Series::new(s.values().iter().map(|&v| v + b).collect()).unwrap();
            let sched = BoxSchedule::default_for(256).unwrap();
            let d0 = dfa_exponent(&s, &sched).unwrap();
            let d1 = dfa_exponent(&shifted, &sched).unwrap();
            prop_assert!((d0.exponent - d1.exponent).abs() < 1e-6);
        }
    }

    // ==== power spectrum ====

    #[test]
    fn cosine_concentrates_power_at_its_frequency() {
        let n = 256;
        let f0 = 12.0 / n as f64;
        let values: Vec<f64> = (0..n)
            .map(|t| (2.0 * std::f64::consts::PI * f0 * t as f64).cos())
            .collect();
        let spec = power_spectrum(&Series::new(values).unwrap()).unwrap();
        let total: f64 = spec.power.iter().sum();
        let peak = spec
            .power
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert_abs_diff_eq!(spec.frequencies[peak.0], f0, epsilon = 1e-12);
        assert!(peak.1 / total > 0.99);
    }

    #[test]
    fn parseval_identity() {
        for n in [256usize, 255] {
            let s = gen_gaussian(n, 31).unwrap();
            let spec = power_spectrum(&s).unwrap();
            let total: f64 = spec.power.iter().sum();
            assert_relative_eq!(total, s.population_variance(), max_relative = 1e-8);
        }
    }

    #[test]
    fn white_noise_spectrum_is_flat() {
        let s = gen_gaussian(4096, 8).unwrap();
        let spec = power_spectrum(&s).unwrap();
        let fit = fit_log_log(&spec.frequencies, &spec.power).unwrap();
        assert!(fit.slope.abs() < 0.1, "slope {}", fit.slope);
    }

    #[test]
    fn dfa_and_spectral_exponents_are_consistent() {
        // alpha = (1 + beta)/2 links the fluctuation exponent to the spectral
        // slope; on white noise both sides sit near 1/2.
        let s = gen_gaussian(4096, 0).unwrap();
        let schedule = BoxSchedule::default_for(s.len()).unwrap();
        let alpha = dfa_exponent(&s, &schedule).unwrap().exponent;
        let spec = power_spectrum(&s).unwrap();
        let beta = -fit_log_log(&spec.frequencies, &spec.power).unwrap().slope;
        let gap = (alpha - (1.0 + beta) / 2.0).abs();
        assert!(gap < 0.07, "alpha {alpha}, beta {beta}, gap {gap}");
    }

    #[test]
    fn spectrum_needs_eight_points() {
        let s = Series::new(vec![1.0; 7]).unwrap();
        assert!(matches!(
            power_spectrum(&s),
            Err(Error::InsufficientData { .. })
        ));
    }

    // ==== two-segment fit ====

    #[test]
    fn recovers_constructed_crossover() {
        let break_x: f64 = 600.0;
        let (m1, m2) = (0.3, 0.9);
        let log_break = break_x.log10();
        let log_x: Vec<f64> = (0..30).map(|i| 1.0 + i as f64 * 0.1).collect();
        let log_y: Vec<f64> = log_x
            .iter()
            .map(|&lx| {
                if lx <= log_break {
                    m1 * lx
                } else {
                    m1 * log_break + m2 * (lx - log_break)
                }
            })
            .collect();
        let fit = two_segment_fit(&log_x, &log_y).unwrap();
        assert_abs_diff_eq!(fit.slope_low, m1, epsilon = 1e-6);
        assert_abs_diff_eq!(fit.slope_high, m2, epsilon = 1e-6);
        assert_relative_eq!(fit.crossover, break_x, max_relative = 1e-6);
    }

    #[test]
    fn single_slope_data_gives_equal_slopes() {
        let log_x: Vec<f64> = (0..12).map(|i| i as f64 * 0.25).collect();
        let log_y: Vec<f64> = log_x.iter().map(|&x| 0.42 * x + 1.0).collect();
        let fit = two_segment_fit(&log_x, &log_y).unwrap();
        assert_abs_diff_eq!(fit.slope_low, fit.slope_high, epsilon = 1e-9);
        assert_abs_diff_eq!(fit.slope_low, 0.42, epsilon = 1e-9);
    }

    #[test]
    fn two_segment_input_checks() {
        let five = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert!(matches!(
            two_segment_fit(&five, &five),
            Err(Error::InsufficientScales { got: 5, need: 6 })
        ));
        let x = [0.0, 1.0, 1.0, 2.0, 3.0, 4.0];
        let y = [0.0; 6];
        assert!(matches!(
            two_segment_fit(&x, &y),
            Err(Error::InvalidParameter(_))
        ));
    }
}
