//! Seeded, reproducible randomness.
//!
//! Every randomized routine takes a `(seed, stream)` pair and derives an
//! independent ChaCha generator per trial, so trials can run in any order
//! (or in parallel) without sharing state.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Backend, Scalar};

/// Generator for trial number `stream` of the run identified by `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A rational with numerator in `[-bound, bound]` and denominator in
/// `[1, den_bound]`.
pub fn rational(rng: &mut ChaCha8Rng, bound: i64, den_bound: i64) -> BigRational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=den_bound);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A nonzero rational with the same bounds as [`rational`].
pub fn nonzero_rational(rng: &mut ChaCha8Rng, bound: i64, den_bound: i64) -> BigRational {
    loop {
        let q = rational(rng, bound, den_bound);
        if !q.is_integer() || q.numer() != &BigInt::from(0) {
            return q;
        }
    }
}

/// A small scalar in the requested backend. Exact values are rationals of
/// bounded height; float values are uniform in `[-bound, bound]`.
pub fn small_scalar(rng: &mut ChaCha8Rng, backend: Backend, bound: i64) -> Scalar {
    match backend {
        Backend::Exact => Scalar::from_rational(rational(rng, bound, 3), backend),
        Backend::Float => Scalar::Float(rng.gen_range(-(bound as f64)..=(bound as f64))),
    }
}
