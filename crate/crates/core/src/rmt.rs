//! Equal-time correlation matrices, their eigenvalue spectra, and the
//! comparison against the random-matrix eigenvalue density.
//!
//! The density convention uses `q = T/N` (observations per variable), so the
//! support bounds reduce to `(1 +/- sqrt(N/T))^2` and the bulk sits near 1
//! when `N << T`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::generators::SeriesPanel;
use crate::series::{mean, population_variance};

/// Symmetric correlation matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: Vec<f64>, // row-major n x n
    n: usize,
}

impl CorrelationMatrix {
    /// Validates symmetry (1e-12), unit diagonal (1e-12), and entry range
    /// (`|rho| <= 1` with 1e-12 slack).
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InsufficientData { need: 1, got: 0 });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedPanel {
                    row: i,
                    expected: n,
                    got: row.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            entries.extend_from_slice(row);
        }
        crate::series::check_finite(&entries)?;
        for i in 0..n {
            if (entries[i * n + i] - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "diagonal entry ({i},{i}) = {} is not 1",
                    entries[i * n + i]
                )));
            }
            for j in 0..i {
                let a = entries[i * n + j];
                let b = entries[j * n + i];
                if (a - b).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric entries at ({i},{j}): {a} vs {b}"
                    )));
                }
                if a.abs() > 1.0 + 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "correlation ({i},{j}) = {a} outside [-1, 1]"
                    )));
                }
            }
        }
        Ok(CorrelationMatrix { entries, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }
}

/// Support of the random-correlation eigenvalue density for an `N x T` panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmtBounds {
    /// Observations per variable, `T / N`.
    pub q: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

impl RmtBounds {
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "q must be positive and finite, got {q}"
            )));
        }
        let root = (1.0 / q).sqrt();
        Ok(RmtBounds {
            q,
            lambda_min: (1.0 - root) * (1.0 - root),
            lambda_max: (1.0 + root) * (1.0 + root),
        })
    }

    pub fn from_dims(n_vars: usize, n_obs: usize) -> Result<Self> {
        if n_vars == 0 || n_obs == 0 {
            return Err(Error::InvalidParameter(
                "panel dimensions must be positive".into(),
            ));
        }
        Self::from_q(n_obs as f64 / n_vars as f64)
    }
}

/// Full eigendecomposition of a correlation matrix, sorted descending, with
/// the random-matrix bounds for the generating panel shape.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSpectrum {
    /// Descending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` belongs to `eigenvalues[i]`; each is sign-fixed so
    /// its component sum is nonnegative.
    pub eigenvectors: Vec<Vec<f64>>,
    pub bounds: RmtBounds,
    /// Indices (into the sorted order) of eigenvalues outside
    /// `[lambda_min, lambda_max]`.
    pub deviating: Vec<usize>,
}

impl CorrelationSpectrum {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// True when the panel had no more observations than variables, which
    /// forces rank deficiency and near-zero eigenvalues.
    pub fn is_underdetermined(&self) -> bool {
        self.bounds.q <= 1.0
    }
}

/// Equal-time correlation coefficients
/// `(<x_i x_j> - <x_i><x_j>) / (sigma_i sigma_j)` with all time averages
/// taken as maximum-likelihood (divide by T) estimates. The diagonal is
/// exactly 1.
pub fn correlation_matrix(panel: &SeriesPanel) -> Result<CorrelationMatrix> {
    let n = panel.n_vars();
    let t = panel.n_obs();
    if t < 2 {
        return Err(Error::InsufficientData { need: 2, got: t });
    }
    let mut centered: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut stds = Vec::with_capacity(n);
    for (row, values) in panel.rows().enumerate() {
        let var = population_variance(values);
        if var == 0.0 {
            return Err(Error::DegenerateVariable { row });
        }
        let m = mean(values);
        centered.push(values.iter().map(|&v| v - m).collect());
        stds.push(var.sqrt());
    }
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = 1.0;
        for j in 0..i {
            let dot: f64 = centered[i]
                .iter()
                .zip(&centered[j])
                .map(|(&a, &b)| a * b)
                .sum();
            let rho = dot / (t as f64) / (stds[i] * stds[j]);
            entries[i * n + j] = rho;
            entries[j * n + i] = rho;
        }
    }
    Ok(CorrelationMatrix { entries, n })
}

/// Symmetric eigendecomposition with descending eigenvalues and bounds from
/// the panel shape `(n, n_obs)`.
///
/// The matrix is symmetrized as `(M + M^T)/2` before decomposition to remove
/// round-off asymmetry. Fails rather than returning a partial spectrum: the
/// solver must converge, eigenvalues must be nonnegative up to `-1e-10`, and
/// the trace must equal `n` to 1e-8 relative.
pub fn eigen_spectrum(matrix: &CorrelationMatrix, n_obs: usize) -> Result<CorrelationSpectrum> {
    let n = matrix.n();
    let bounds = RmtBounds::from_dims(n, n_obs)?;
    let sym = DMatrix::from_fn(n, n, |i, j| (matrix.entry(i, j) + matrix.entry(j, i)) / 2.0);
    let eigen = SymmetricEigen::try_new(sym, 1e-10, 100_000)
        .ok_or_else(|| Error::Numeric("eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eigen.eigenvalues[k]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let col = eigen.eigenvectors.column(k);
            let mut v: Vec<f64> = col.iter().copied().collect();
            if v.iter().sum::<f64>() < 0.0 {
                for c in &mut v {
                    *c = -*c;
                }
            }
            v
        })
        .collect();

    if eigenvalues.iter().any(|&l| l < -1e-10) {
        return Err(Error::Numeric(format!(
            "negative eigenvalue {} from a correlation matrix",
            eigenvalues[n - 1]
        )));
    }
    let trace: f64 = eigenvalues.iter().sum();
    if (trace - n as f64).abs() > 1e-8 * n as f64 {
        return Err(Error::Numeric(format!(
            "eigenvalue sum {trace} deviates from trace {n}"
        )));
    }

    let deviating = eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l < bounds.lambda_min || l > bounds.lambda_max)
        .map(|(i, _)| i)
        .collect();
    Ok(CorrelationSpectrum {
        eigenvalues,
        eigenvectors,
        bounds,
        deviating,
    })
}

/// Random-correlation eigenvalue density
/// `q/(2 pi lambda) * sqrt((lambda_max - lambda)(lambda - lambda_min))`
/// inside the open support, 0 outside.
///
/// # Panics
/// Panics if `q` is not positive and finite.
pub fn mp_density(lambda: f64, q: f64) -> f64 {
    assert!(q > 0.0 && q.is_finite(), "q must be positive, got {q}");
    let root = (1.0 / q).sqrt();
    let lo = (1.0 - root) * (1.0 - root);
    let hi = (1.0 + root) * (1.0 + root);
    if lambda <= lo || lambda >= hi {
        return 0.0;
    }
    q / (2.0 * std::f64::consts::PI * lambda) * ((hi - lambda) * (lambda - lo)).sqrt()
}

/// Eigenvalue histogram against the theoretical density on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RmtComparison {
    pub bin_centers: Vec<f64>,
    /// Histogram normalized to unit area.
    pub histogram: Vec<f64>,
    /// [`mp_density`] evaluated at the bin centers.
    pub theory: Vec<f64>,
    pub max_abs_deviation: f64,
}

/// Bins the spectrum over `[min(lambda_min, smallest), max(lambda_max,
/// largest)]` with `n_bins` equal-width bins and reports the largest
/// absolute histogram-minus-theory gap.
pub fn spectrum_vs_rmt(spectrum: &CorrelationSpectrum, n_bins: usize) -> Result<RmtComparison> {
    if spectrum.n() < 20 {
        return Err(Error::InsufficientData {
            need: 20,
            got: spectrum.n(),
        });
    }
    if n_bins < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 bins, got {n_bins}"
        )));
    }
    let smallest = *spectrum.eigenvalues.last().expect("spectrum nonempty");
    let largest = spectrum.eigenvalues[0];
    let lo = spectrum.bounds.lambda_min.min(smallest);
    let hi = spectrum.bounds.lambda_max.max(largest);
    let width = (hi - lo) / n_bins as f64;
    if width.is_nan() || width <= 0.0 {
        return Err(Error::Numeric("degenerate eigenvalue range".into()));
    }
    let mut counts = vec![0usize; n_bins];
    for &l in &spectrum.eigenvalues {
        let k = (((l - lo) / width) as usize).min(n_bins - 1);
        counts[k] += 1;
    }
    let norm = spectrum.n() as f64 * width;
    let mut bin_centers = Vec::with_capacity(n_bins);
    let mut histogram = Vec::with_capacity(n_bins);
    let mut theory = Vec::with_capacity(n_bins);
    let mut max_abs_deviation = 0.0f64;
    for (k, &c) in counts.iter().enumerate() {
        let center = lo + (k as f64 + 0.5) * width;
        let h = c as f64 / norm;
        let t = mp_density(center, spectrum.bounds.q);
        max_abs_deviation = max_abs_deviation.max((h - t).abs());
        bin_centers.push(center);
        histogram.push(h);
        theory.push(t);
    }
    Ok(RmtComparison {
        bin_centers,
        histogram,
        theory,
        max_abs_deviation,
    })
}

/// Top eigenpair; the eigenvector keeps the spectrum's sign convention
/// (component sum nonnegative).
pub fn market_mode(spectrum: &CorrelationSpectrum) -> (f64, Vec<f64>) {
    (spectrum.eigenvalues[0], spectrum.eigenvectors[0].clone())
}
