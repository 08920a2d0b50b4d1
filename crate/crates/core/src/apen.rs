//! Approximate entropy: the log-likelihood drop of window matches when the
//! embedding dimension grows from `m` to `m+1`.
//!
//! Two evaluation paths coexist. [`apen_naive`] is the literal quadratic
//! reference; [`apen`] prefilters match candidates through a sort on the
//! first window element. The prefilter applies exactly the same float
//! comparisons as the naive inner loop, so the two paths agree bitwise, not
//! just approximately; the test battery holds them to that.
//!
//! Matches use the Chebyshev distance, counts include the self-match (which
//! keeps every `ln C_i` finite), and `Phi^m` sums `ln C_i` in index order on
//! both paths.

use crate::error::{Error, Result};
use crate::series::Series;

/// Embedding dimension and tolerance for window matching.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApEnParams {
    pub m: usize,
    pub r: f64,
}

impl ApEnParams {
    pub fn new(m: usize, r: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "embedding dimension must be >= 1".into(),
            ));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive and finite, got {r}"
            )));
        }
        Ok(ApEnParams { m, r })
    }

    /// Literature defaults: `m = 2`, `r = 0.2` population standard
    /// deviations of the series. Fails on constant series, where no positive
    /// tolerance can be derived.
    pub fn default_for(series: &Series) -> Result<Self> {
        let sd = series.population_std();
        if sd == 0.0 {
            return Err(Error::DegenerateSeries("zero variance"));
        }
        ApEnParams::new(2, 0.2 * sd)
    }
}

/// Largest absolute componentwise difference.
///
/// # Panics
/// Panics if the windows differ in length.
pub fn chebyshev_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "windows must have equal length");
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `Phi^m(r)`: mean over window starts `i` of `ln C_i^m(r)`, where `C_i` is
/// the fraction of windows (self included) within Chebyshev distance `r`.
///
/// This is the literal quadratic-time reference evaluation.
pub fn phi_m(series: &Series, m: usize, r: f64) -> Result<f64> {
    let p = ApEnParams::new(m, r)?;
    check_length(series, m)?;
    Ok(phi_naive(series.values(), p.m, p.r))
}

/// `Phi^m(r) - Phi^{m+1}(r)` via the sorted-prefilter path.
pub fn apen(series: &Series, params: &ApEnParams) -> Result<f64> {
    let p = ApEnParams::new(params.m, params.r)?;
    check_length(series, p.m + 1)?;
    Ok(phi_fast(series.values(), p.m, p.r) - phi_fast(series.values(), p.m + 1, p.r))
}

/// `Phi^m(r) - Phi^{m+1}(r)` via the literal double loop; the correctness
/// anchor for [`apen`].
pub fn apen_naive(series: &Series, params: &ApEnParams) -> Result<f64> {
    let p = ApEnParams::new(params.m, params.r)?;
    check_length(series, p.m + 1)?;
    Ok(phi_naive(series.values(), p.m, p.r) - phi_naive(series.values(), p.m + 1, p.r))
}

fn check_length(series: &Series, m: usize) -> Result<()> {
    if series.len() < m + 1 {
        return Err(Error::InsufficientData {
            need: m + 1,
            got: series.len(),
        });
    }
    Ok(())
}

fn phi_from_counts(counts: &[usize], windows: usize) -> f64 {
    let w = windows as f64;
    counts
        .iter()
        .map(|&c| libm::log(c as f64 / w))
        .sum::<f64>()
        / w
}

fn phi_naive(u: &[f64], m: usize, r: f64) -> f64 {
    let w = u.len() - m + 1;
    let mut counts = vec![0usize; w];
    for i in 0..w {
        for j in 0..w {
            let mut matched = true;
            for k in 0..m {
                if (u[j + k] - u[i + k]).abs() > r {
                    matched = false;
                    break;
                }
            }
            if matched {
                counts[i] += 1;
            }
        }
    }
    phi_from_counts(&counts, w)
}

// The boundary predicates below must negate the naive scan's `> r` test
// verbatim; a rewritten `<=` comparison would not be the same float predicate.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn phi_fast(u: &[f64], m: usize, r: f64) -> f64 {
    let w = u.len() - m + 1;
    // Window starts sorted by first element; a window j can only match i if
    // |u[j] - u[i]| <= r, which is a contiguous run in this order.
    let mut order: Vec<usize> = (0..w).collect();
    order.sort_by(|&a, &b| u[a].total_cmp(&u[b]));
    let sorted: Vec<f64> = order.iter().map(|&j| u[j]).collect();

    let mut counts = vec![0usize; w];
    for i in 0..w {
        // Boundaries use the same rounded |difference| <= r predicate as the
        // naive scan, so the candidate set is identical bit for bit.
        let lo = sorted.partition_point(|&v| u[i] - v > r);
        let hi = sorted.partition_point(|&v| !(v - u[i] > r));
        let mut c = 0usize;
        for &j in &order[lo..hi] {
            let mut matched = true;
            for k in 1..m {
                if (u[j + k] - u[i + k]).abs() > r {
                    matched = false;
                    break;
                }
            }
            if matched {
                c += 1;
            }
        }
        counts[i] = c;
    }
    phi_from_counts(&counts, w)
}
