//! Seeded, portable random streams.
//!
//! Every stream is a ChaCha8 generator keyed by a splitmix64 mix of the user
//! seed and a tuple of stream labels (e.g. `(r, rho, trial)` for a phase
//! grid cell), so parallel and serial runs draw identical numbers. Normals
//! use the Box–Muller cosine branch, one normal per pair of uniforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a stream seed from a base seed and labels.
pub fn stream_seed(seed: u64, labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(splitmix64(seed), |acc, &l| splitmix64(acc ^ splitmix64(l)))
}

pub fn stream(seed: u64, labels: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(seed, labels))
}

/// Standard normal via Box–Muller: `sqrt(-2 ln u1) · cos(2π u2)` with
/// `u1 ∈ (0, 1]`, `u2 ∈ [0, 1)`.
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// `round(fraction · n)` distinct positions out of `0..n`, uniformly without
/// replacement, in sorted order.
pub fn sample_positions(rng: &mut impl Rng, n: usize, fraction: f64) -> Vec<usize> {
    let k = ((fraction * n as f64).round() as usize).min(n);
    let mut picked = rand::seq::index::sample(rng, n, k).into_vec();
    picked.sort_unstable();
    picked
}
