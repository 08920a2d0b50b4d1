//! Seedable synthetic processes: Gaussian noise, random walks, GARCH(1,1),
//! and diffusively coupled logistic-map lattices.
//!
//! Every generator is a pure function of its parameters and a `u64` seed;
//! repeated calls are bitwise identical (see [`crate::rng`]).

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::series::{check_finite, Series};

/// GARCH(1,1) coefficients.
///
/// The process is stationary when `alpha1 + beta1 < 1`; generation rejects
/// nonstationary parameter sets unless [`GarchParams::allow_nonstationary`]
/// is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GarchParams {
    pub alpha0: f64,
    pub alpha1: f64,
    pub beta1: f64,
    allow_nonstationary: bool,
}

impl GarchParams {
    pub fn new(alpha0: f64, alpha1: f64, beta1: f64) -> Result<Self> {
        if !(alpha0 > 0.0 && alpha0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha0 must be positive and finite, got {alpha0}"
            )));
        }
        if !(alpha1 >= 0.0 && alpha1.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha1 must be nonnegative and finite, got {alpha1}"
            )));
        }
        if !(beta1 >= 0.0 && beta1.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta1 must be nonnegative and finite, got {beta1}"
            )));
        }
        Ok(GarchParams {
            alpha0,
            alpha1,
            beta1,
            allow_nonstationary: false,
        })
    }

    /// Permit `alpha1 + beta1 >= 1`. The variance recursion then has no
    /// stationary point and `sigma0^2` falls back to `alpha0`.
    pub fn allow_nonstationary(mut self) -> Self {
        self.allow_nonstationary = true;
        self
    }

    pub fn is_stationary(&self) -> bool {
        self.alpha1 + self.beta1 < 1.0
    }
}

impl Default for GarchParams {
    /// Reference parameterization used by the generated-series test battery:
    /// `alpha0 = 0.00023`, `alpha1 = 0.09`, `beta1 = 0.01`.
    fn default() -> Self {
        GarchParams {
            alpha0: 0.00023,
            alpha1: 0.09,
            beta1: 0.01,
            allow_nonstationary: false,
        }
    }
}

/// Coupled-map-lattice configuration: ring size, map parameter `a` of
/// `f(y) = 1 - a y^2`, diffusive coupling `epsilon`, discarded transient, and
/// recorded steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmlParams {
    pub n_sites: usize,
    pub a: f64,
    pub epsilon: f64,
    pub transient: usize,
    pub steps: usize,
}

impl CmlParams {
    pub fn new(n_sites: usize, a: f64, epsilon: f64, transient: usize, steps: usize) -> Result<Self> {
        if n_sites < 3 {
            return Err(Error::InvalidParameter(format!(
                "n_sites must be >= 3 for nearest-neighbor coupling, got {n_sites}"
            )));
        }
        if !(a > 0.0 && a <= 2.0) {
            return Err(Error::InvalidParameter(format!(
                "map parameter a must lie in (0, 2], got {a}"
            )));
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter(format!(
                "coupling epsilon must lie in [0, 1], got {epsilon}"
            )));
        }
        if steps == 0 {
            return Err(Error::InvalidParameter("steps must be >= 1".into()));
        }
        Ok(CmlParams {
            n_sites,
            a,
            epsilon,
            transient,
            steps,
        })
    }
}

impl Default for CmlParams {
    /// Reference lattice: 500 sites, `a = 1.97`, `epsilon = 0.4`, 10^4
    /// transient iterations, 3000 recorded steps.
    fn default() -> Self {
        CmlParams {
            n_sites: 500,
            a: 1.97,
            epsilon: 0.4,
            transient: 10_000,
            steps: 3000,
        }
    }
}

/// N-variable x T-observation matrix, one variable per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPanel {
    data: Vec<Vec<f64>>,
    n_obs: usize,
}

impl SeriesPanel {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InsufficientData { need: 1, got: 0 });
        }
        let n_obs = rows[0].len();
        if n_obs == 0 {
            return Err(Error::InsufficientData { need: 1, got: 0 });
        }
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n_obs {
                return Err(Error::RaggedPanel {
                    row,
                    expected: n_obs,
                    got: values.len(),
                });
            }
            check_finite(values)?;
        }
        Ok(SeriesPanel { data: rows, n_obs })
    }

    pub fn n_vars(&self) -> usize {
        self.data.len()
    }

    pub fn n_obs(&self) -> usize {
        self.n_obs
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.iter().map(|r| r.as_slice())
    }

    /// One variable's trajectory as a standalone series. Site 0 is the
    /// conventional pick when a single lattice trajectory is analyzed.
    ///
    /// # Panics
    /// Panics if `i >= n_vars`.
    pub fn site_series(&self, i: usize) -> Series {
        Series::new(self.data[i].clone()).expect("panel rows are finite and nonempty")
    }
}

/// `n` iid standard-normal draws.
pub fn gen_gaussian(n: usize, seed: u64) -> Result<Series> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    Series::new(Rng::new(seed).normals(n))
}

/// Random walk `x0 + sigma * cumsum(eta)`; the increment stream equals
/// [`gen_gaussian`] with the same seed, scaled by `sigma`.
pub fn gen_random_walk(n: usize, seed: u64, sigma: f64, x0: f64) -> Result<Series> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be positive and finite, got {sigma}"
        )));
    }
    if !x0.is_finite() {
        return Err(Error::InvalidParameter("x0 must be finite".into()));
    }
    let mut level = x0;
    let values = Rng::new(seed)
        .normals(n)
        .into_iter()
        .map(|eta| {
            level += sigma * eta;
            level
        })
        .collect();
    Series::new(values)
}

/// GARCH(1,1): `sigma_t^2 = alpha0 + alpha1 x_{t-1}^2 + beta1 sigma_{t-1}^2`,
/// `x_t = eta_t sigma_t`. Returns the return series and the volatility path
/// `sigma_t` (both length `n`); `sigma_0^2` starts at the unconditional
/// variance `alpha0 / (1 - alpha1 - beta1)`.
pub fn gen_garch11(n: usize, params: &GarchParams, seed: u64) -> Result<(Series, Series)> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let persistence = params.alpha1 + params.beta1;
    if !params.is_stationary() && !params.allow_nonstationary {
        return Err(Error::NonstationaryParameters { persistence });
    }
    let mut rng = Rng::new(seed);
    let eta = rng.normals(n);
    let mut var = if params.is_stationary() {
        params.alpha0 / (1.0 - persistence)
    } else {
        params.alpha0
    };
    let mut returns = Vec::with_capacity(n);
    let mut volatility = Vec::with_capacity(n);
    for &e in &eta {
        let sigma = var.sqrt();
        let x = e * sigma;
        returns.push(x);
        volatility.push(sigma);
        var = params.alpha0 + params.alpha1 * x * x + params.beta1 * var;
    }
    Ok((Series::new(returns)?, Series::new(volatility)?))
}

/// One synchronous update of the diffusively coupled ring:
/// `y'_i = (1-eps) f(y_i) + (eps/2) [f(y_{i+1}) + f(y_{i-1})]` with
/// `f(y) = 1 - a y^2` and periodic indices.
pub fn cml_step(state: &[f64], a: f64, epsilon: f64) -> Vec<f64> {
    let n = state.len();
    let f: Vec<f64> = state.iter().map(|&y| 1.0 - a * y * y).collect();
    (0..n)
        .map(|i| {
            let right = f[(i + 1) % n];
            let left = f[(i + n - 1) % n];
            (1.0 - epsilon) * f[i] + (epsilon / 2.0) * (right + left)
        })
        .collect()
}

/// Coupled-map-lattice panel: random initial state uniform in [-1, 1], then
/// `transient` discarded updates followed by `steps` recorded ones. Every
/// recorded value lies in `[1-a, 1]`.
pub fn gen_cml(params: &CmlParams, seed: u64) -> Result<SeriesPanel> {
    CmlParams::new(
        params.n_sites,
        params.a,
        params.epsilon,
        params.transient,
        params.steps,
    )?;
    let mut rng = Rng::new(seed);
    let mut state: Vec<f64> = (0..params.n_sites)
        .map(|_| rng.uniform_symmetric())
        .collect();
    let mut rows = vec![Vec::with_capacity(params.steps); params.n_sites];
    for t in 0..params.transient + params.steps {
        state = cml_step(&state, params.a, params.epsilon);
        if t >= params.transient {
            for (row, &y) in rows.iter_mut().zip(&state) {
                row.push(y);
            }
        }
    }
    SeriesPanel::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaussian_moments_at_scale() {
        let s = gen_gaussian(100_000, 2024).unwrap();
        assert!(s.mean().abs() < 0.02, "mean {}", s.mean());
        assert!(
            (s.population_variance() - 1.0).abs() < 0.03,
            "variance {}",
            s.population_variance()
        );
    }

    #[test]
    fn gaussian_is_deterministic() {
        assert_eq!(gen_gaussian(256, 7).unwrap(), gen_gaussian(256, 7).unwrap());
        assert_ne!(gen_gaussian(256, 7).unwrap(), gen_gaussian(256, 8).unwrap());
    }

    #[test]
    fn walk_single_step_and_increments() {
        let one = gen_random_walk(1, 13, 1.0, 5.0).unwrap();
        let eta = gen_gaussian(1, 13).unwrap();
        assert_eq!(one.values()[0], 5.0 + eta.values()[0]);

        let n = 500;
        let sigma = 0.3;
        let walk = gen_random_walk(n, 99, sigma, -2.0).unwrap();
        let eta = gen_gaussian(n, 99).unwrap();
        let mut prev = -2.0;
        for t in 0..n {
            let inc = walk.values()[t] - prev;
            assert_abs_diff_eq!(inc, sigma * eta.values()[t], epsilon = 1e-12);
            prev = walk.values()[t];
        }
    }

    #[test]
    fn walk_rejects_bad_sigma() {
        assert!(gen_random_walk(10, 0, 0.0, 0.0).is_err());
        assert!(gen_random_walk(10, 0, -1.0, 0.0).is_err());
    }

    #[test]
    fn garch_collapses_to_iid_normal() {
        let params = GarchParams::new(4.0, 0.0, 0.0).unwrap();
        let (x, vol) = gen_garch11(64, &params, 31).unwrap();
        let eta = gen_gaussian(64, 31).unwrap();
        for t in 0..64 {
            assert_eq!(x.values()[t], 2.0 * eta.values()[t]);
            assert_eq!(vol.values()[t], 2.0);
        }
    }

    #[test]
    fn garch_long_run_variance() {
        let params = GarchParams::default();
        let (x, _) = gen_garch11(1_000_000, &params, 1).unwrap();
        let target = params.alpha0 / (1.0 - params.alpha1 - params.beta1);
        let var = x.population_variance();
        assert!(
            (var - target).abs() / target < 0.05,
            "variance {var} vs stationary {target}"
        );
    }

    #[test]
    fn garch_volatility_floor() {
        let params = GarchParams::default();
        let (_, vol) = gen_garch11(10_000, &params, 5).unwrap();
        let floor = params.alpha0.sqrt();
        assert!(vol.values().iter().all(|&s| s >= floor));
    }

    #[test]
    fn garch_stationarity_gate() {
        let p = GarchParams::new(0.1, 0.6, 0.5).unwrap();
        match gen_garch11(10, &p, 0) {
            Err(Error::NonstationaryParameters { persistence }) => {
                assert_abs_diff_eq!(persistence, 1.1, epsilon = 1e-15)
            }
            other => panic!("expected nonstationary error, got {other:?}"),
        }
        let forced = p.allow_nonstationary();
        assert!(gen_garch11(10, &forced, 0).is_ok());
    }

    #[test]
    fn garch_is_deterministic() {
        let params = GarchParams::default();
        assert_eq!(
            gen_garch11(1000, &params, 42).unwrap(),
            gen_garch11(1000, &params, 42).unwrap()
        );
    }

    #[test]
    fn cml_step_maps_zero_state_to_one() {
        for eps in [0.0, 0.4, 1.0] {
            let next = cml_step(&[0.0; 5], 1.97, eps);
            assert!(next.iter().all(|&y| y == 1.0), "eps {eps}: {next:?}");
        }
    }

    #[test]
    fn cml_step_commutes_with_rotation() {
        let state: Vec<f64> = (0..7).map(|i| ((i * i) as f64).sin() * 0.9).collect();
        let mut rotated = state.clone();
        rotated.rotate_left(1);
        let mut expect = cml_step(&state, 1.97, 0.4);
        expect.rotate_left(1);
        assert_eq!(cml_step(&rotated, 1.97, 0.4), expect);
    }

    #[test]
    fn cml_zero_coupling_is_independent_maps() {
        let params = CmlParams::new(5, 1.7, 0.0, 3, 20).unwrap();
        let panel = gen_cml(&params, 11).unwrap();
        let mut rng = crate::rng::Rng::new(11);
        let init: Vec<f64> = (0..5).map(|_| rng.uniform_symmetric()).collect();
        for (site, &start) in init.iter().enumerate() {
            let mut y = start;
            let mut solo = Vec::new();
            for t in 0..params.transient + params.steps {
                y = 1.0 - params.a * y * y;
                if t >= params.transient {
                    solo.push(y);
                }
            }
            assert_eq!(panel.row(site), solo.as_slice(), "site {site}");
        }
    }

    #[test]
    fn cml_values_stay_in_map_interval() {
        let params = CmlParams {
            steps: 3000,
            ..CmlParams::default()
        };
        let panel = gen_cml(&params, 3).unwrap();
        let lo = 1.0 - params.a;
        assert_eq!(panel.n_vars(), 500);
        assert_eq!(panel.n_obs(), 3000);
        for row in panel.rows() {
            assert!(row.iter().all(|&y| (lo..=1.0).contains(&y)));
        }
    }

    #[test]
    fn cml_is_deterministic() {
        let params = CmlParams::new(8, 1.97, 0.4, 100, 50).unwrap();
        assert_eq!(gen_cml(&params, 21).unwrap(), gen_cml(&params, 21).unwrap());
    }

    #[test]
    fn panel_shape_checks() {
        let err = SeriesPanel::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).unwrap_err();
        assert_eq!(
            err,
            Error::RaggedPanel {
                row: 1,
                expected: 2,
                got: 1
            }
        );
        let panel = SeriesPanel::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(panel.site_series(1).values(), &[3.0, 4.0]);
    }

    #[test]
    fn param_validation() {
        assert!(GarchParams::new(0.0, 0.1, 0.1).is_err());
        assert!(GarchParams::new(0.1, -0.1, 0.1).is_err());
        assert!(CmlParams::new(2, 1.97, 0.4, 0, 10).is_err());
        assert!(CmlParams::new(10, 2.1, 0.4, 0, 10).is_err());
        assert!(CmlParams::new(10, 1.97, 1.5, 0, 10).is_err());
        assert!(CmlParams::new(10, 1.97, 0.4, 0, 0).is_err());
    }
}
