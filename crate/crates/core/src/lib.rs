//! Scaling, spectral, and entropy diagnostics for time series.
//!
//! The crate provides the measurement side of fluctuation analysis:
//!
//! - log-returns, normalization, and aggregation ([`series`]);
//! - seeded reference processes: Gaussian noise, random walks, GARCH(1,1),
//!   coupled map lattices ([`generators`]);
//! - rescaled-range and detrended-fluctuation exponents, periodograms, and
//!   two-segment log-log fits ([`scaling`]);
//! - correlation-matrix spectra against Marchenko-Pastur bounds ([`rmt`]);
//! - approximate entropy ([`apen`]);
//! - autocorrelation, volatility-clustering, and tail-index statistics
//!   ([`stylized`]).
//!
//! All stochastic output is a pure function of an explicit `u64` seed; see
//! [`rng`] for the reproducibility contract.

pub mod apen;
pub mod error;
pub mod generators;
pub mod rmt;
pub mod rng;
pub mod scaling;
pub mod series;
pub mod stylized;

pub use error::{Error, ErrorCategory, Result};
pub use series::{PriceSeries, ReturnSeries, Series};
