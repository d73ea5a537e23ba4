//! Seeded, splittable random streams.
//!
//! Every sampled quantity is drawn from a stream keyed by `(seed, index)`, so
//! results do not depend on how work is distributed over threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::lp::lp_norm;
use crate::scalar::Scalar;

pub type Rng = ChaCha8Rng;

/// Generator for sample `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vec<T: Scalar>(rng: &mut Rng, n: usize) -> Vec<T> {
    (0..n).map(|_| T::lit(StandardNormal.sample(rng))).collect()
}

/// Random direction normalized to unit `l^p` norm (resampled if degenerate).
pub fn unit_vec<T: Scalar>(rng: &mut Rng, n: usize, p: T) -> Vec<T> {
    loop {
        let g = gaussian_vec::<T>(rng, n);
        let norm = lp_norm(&g, p);
        if norm > T::lit(1e-12) {
            return g.into_iter().map(|t| t / norm).collect();
        }
    }
}

pub fn uniform<T: Scalar>(rng: &mut Rng, lo: f64, hi: f64) -> T {
    T::lit(rand::Rng::random_range(rng, lo..hi))
}
