//! Seeded uniform sampling of unit spheres in `ℍⁿ` and `ℝⁿ`.
//!
//! The generator is ChaCha8 seeded from a `u64`, so every stream is
//! reproducible across platforms.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::quaternion::Quaternion;

/// The portable generator used throughout the crate.
pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a master seed with a stream index (splitmix64 finaliser).
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
pub fn gaussian(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Streams unit vectors of `ℍ^dim` (uniform on the `(4·dim − 1)`-sphere).
pub struct SphereSampler {
    rng: Rng,
    dim: usize,
}

impl SphereSampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim >= 1, "sphere dimension must be positive");
        Self {
            rng: rng_from_seed(seed),
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Overwrites `out` (length `dim`) with the next unit vector.
    pub fn fill(&mut self, out: &mut [Quaternion]) {
        debug_assert_eq!(out.len(), self.dim);
        loop {
            let mut n2 = 0.0;
            for q in out.iter_mut() {
                *q = Quaternion::new(
                    gaussian(&mut self.rng),
                    gaussian(&mut self.rng),
                    gaussian(&mut self.rng),
                    gaussian(&mut self.rng),
                );
                n2 += q.norm_sqr();
            }
            if n2 > 0.0 {
                let s = 1.0 / libm::sqrt(n2);
                for q in out.iter_mut() {
                    *q = q.scale(s);
                }
                return;
            }
        }
    }

    pub fn next_vector(&mut self) -> Vec<Quaternion> {
        let mut v = alloc::vec![Quaternion::ZERO; self.dim];
        self.fill(&mut v);
        v
    }
}

/// `count` independent uniform unit vectors of `ℍ^dim`.
pub fn sample_unit_sphere(dim: usize, count: usize, seed: u64) -> Vec<Vec<Quaternion>> {
    let mut s = SphereSampler::new(dim, seed);
    (0..count).map(|_| s.next_vector()).collect()
}

/// A uniform unit vector of `ℝ^dim`.
pub fn real_unit_vector(rng: &mut Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let n = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if n > 0.0 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// A uniform unit quaternion.
pub fn unit_quaternion(rng: &mut Rng) -> Quaternion {
    loop {
        let q = Quaternion::new(gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng));
        let n = q.norm();
        if n > 0.0 {
            return q.scale(1.0 / n);
        }
    }
}

/// Uniform index in `0..n` (`n > 0`).
pub fn uniform_index(rng: &mut Rng, n: usize) -> usize {
    use rand_core::RngCore;
    debug_assert!(n > 0);
    // Lemire's multiply-shift; the bias is below 2^-32 for the sizes used here.
    ((rng.next_u64() >> 32) * n as u64 >> 32) as usize
}

/// Uniform float in `[0, 1)`.
pub fn uniform01(rng: &mut Rng) -> f64 {
    use rand_core::RngCore;
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
