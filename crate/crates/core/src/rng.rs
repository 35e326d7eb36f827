//! Seeded, splittable random streams.
//!
//! An [`RngStream`] is a ChaCha8 generator keyed by a 64-bit seed and
//! positioned on an independent 64-bit stream. Identical `(seed, stream_id)`
//! pairs reproduce identical draws on every platform.

use std::f64::consts::PI;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::c64;

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            inner,
            spare: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    fn box_muller(&mut self) -> (f64, f64) {
        let r = (-2.0 * self.uniform().ln()).sqrt();
        let theta = 2.0 * PI * self.uniform();
        (r * theta.cos(), r * theta.sin())
    }

    /// Standard normal.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let (a, b) = self.box_muller();
        self.spare = Some(b);
        a
    }

    /// Complex Gaussian with `E|z|² = var`; real and imaginary parts are
    /// independent `N(0, var/2)`.
    pub fn complex_normal(&mut self, var: f64) -> c64 {
        let (a, b) = self.box_muller();
        let s = (0.5 * var).sqrt();
        c64::new(s * a, s * b)
    }

    /// Poisson count with the given mean (zero for a zero mean).
    pub fn poisson(&mut self, mean: f64) -> u64 {
        if mean <= 0.0 {
            return 0;
        }
        let d = Poisson::new(mean).expect("finite positive Poisson mean");
        d.sample(self) as u64
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// SplitMix64 finalizer, used to derive child seeds.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let mut a = RngStream::new(5, 3);
        let mut b = RngStream::new(5, 3);
        for _ in 0..100 {
            assert_eq!(a.normal().to_bits(), b.normal().to_bits());
        }
        let mut c = RngStream::new(5, 4);
        let mut a = RngStream::new(5, 3);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn uniform_open() {
        let mut r = RngStream::new(1, 0);
        for _ in 0..10_000 {
            let u = r.uniform();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn normal_moments() {
        let mut r = RngStream::new(2, 0);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| r.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| x * x).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.02);
        let zs: Vec<c64> = (0..n).map(|_| r.complex_normal(2.0)).collect();
        let v = zs.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        assert!((v - 2.0).abs() < 0.03);
    }

    #[test]
    fn poisson_mean() {
        let mut r = RngStream::new(3, 0);
        assert_eq!(r.poisson(0.0), 0);
        let n = 100_000;
        let s: u64 = (0..n).map(|_| r.poisson(2.5)).sum();
        assert!((s as f64 / n as f64 - 2.5).abs() < 0.03);
    }

    #[test]
    fn mixing_differs() {
        assert_ne!(mix_seed(1, 2), mix_seed(1, 3));
        assert_eq!(mix_seed(9, 9), mix_seed(9, 9));
    }
}
