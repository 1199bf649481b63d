//! Deterministic sample sets for pointwise identity checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Complex;

pub const DEFAULT_SEED: u64 = 42;
pub const SAMPLE_RADII: [f64; 2] = [0.4, 0.8];
pub const POINTS_PER_CIRCLE: usize = 10;
/// Pole-exclusion margin for sampled identities.
pub const SAMPLE_POLE_MARGIN: f64 = 1e-3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Twenty points: ten equally spaced on each of `|z| = 0.4` and `|z| = 0.8`,
/// each circle rotated by a seeded offset.
pub fn default_samples(seed: u64) -> Vec<Complex> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(SAMPLE_RADII.len() * POINTS_PER_CIRCLE);
    for radius in SAMPLE_RADII {
        let offset: f64 = r.gen();
        for k in 0..POINTS_PER_CIRCLE {
            let theta = std::f64::consts::TAU * (k as f64 + offset) / POINTS_PER_CIRCLE as f64;
            out.push(Complex::from_polar(radius, theta));
        }
    }
    out
}

/// Uniform point in the closed disk of the given radius.
pub fn point_in_disk<R: Rng>(r: &mut R, radius: f64) -> Complex {
    let rho = radius * r.gen::<f64>().sqrt();
    Complex::from_polar(rho, r.gen_range(0.0..std::f64::consts::TAU))
}

pub fn points_in_disk(seed: u64, count: usize, radius: f64) -> Vec<Complex> {
    let mut r = rng(seed);
    (0..count).map(|_| point_in_disk(&mut r, radius)).collect()
}
