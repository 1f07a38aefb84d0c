//! Seeded randomness.
//!
//! Every sampled experiment draws from ChaCha20 keyed by `seed_from_u64(seed)`
//! (the `rand_chacha` construction: the 64-bit seed is expanded with PCG32 into
//! the 256-bit key). Uniform doubles take the top 53 bits of a `u64` draw, and
//! Gaussians use the Box–Muller transform so another implementation can
//! reproduce the exact same streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Name recorded in every report.
pub const PRNG_NAME: &str = "ChaCha20 (rand_chacha seed_from_u64) + Box-Muller";

#[derive(Clone, Debug)]
pub struct SeededRng {
    inner: ChaCha20Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { inner: ChaCha20Rng::seed_from_u64(seed) }
    }

    /// Independent stream for sub-task `index` of experiment `seed`.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { inner: rng }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.gen::<u64>() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }

    pub fn gaussian(&mut self) -> f64 {
        // 1 - u keeps the logarithm finite.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Uniform point on the unit sphere `S^n` in `R^{n+1}`.
    pub fn unit_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..=n).map(|_| self.gaussian()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }
}
