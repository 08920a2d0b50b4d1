//! Deterministic random source shared by all generators.
//!
//! Every stochastic process in this crate draws from [`Rng`], a ChaCha12
//! stream keyed by a `u64` seed. The integer-to-float transforms are spelled
//! out here (not delegated to distribution crates) so that a given seed
//! reproduces the same series bit for bit on any platform:
//!
//! - uniforms take the top 53 bits of the stream scaled by 2⁻⁵³;
//! - normals use the Marsaglia polar method with `libm::log`, whose result
//!   is identical everywhere, unlike the platform `ln`.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

const U53: f64 = 1.0 / 9_007_199_254_740_992.0; // 2^-53

#[derive(Debug, Clone)]
pub struct Rng(ChaCha12Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(ChaCha12Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * U53
    }

    /// Uniform draw on `[-1, 1)`.
    pub fn uniform_symmetric(&mut self) -> f64 {
        2.0 * self.uniform() - 1.0
    }

    fn normal_pair(&mut self) -> (f64, f64) {
        loop {
            let u = self.uniform_symmetric();
            let v = self.uniform_symmetric();
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * libm::log(s) / s).sqrt();
                return (u * f, v * f);
            }
        }
    }

    /// One standard normal draw. The polar method yields pairs; the spare is
    /// discarded so the draw count per call is not data-dependent state.
    pub fn standard_normal(&mut self) -> f64 {
        self.normal_pair().0
    }

    /// `n` iid standard normal draws, consuming polar pairs without waste.
    pub fn normals(&mut self, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        while out.len() < n {
            let (a, b) = self.normal_pair();
            out.push(a);
            out.push(b);
        }
        out.truncate(n);
        out
    }
}
