//! Uniform vectors on the unit sphere of `C^d`.
//!
//! For such a vector `u`, the vector `Z = (|u_1|², ..., |u_d|²)` is uniform on
//! the standard simplex. This gives closed forms for the mixed moments of `Z`
//! ([`sphere_moment`]) and its characteristic function ([`simplex_fourier`]),
//! and reduces the Fourier transform of the Hermitian model at a matrix `A` to
//! an average over `Z` that only involves the eigenvalues of `A`
//! ([`pd_fourier`]).

use crate::levy::{levy_exponent, LevyTriple};
use crate::{c64, Error, Result, RngStream};

/// Minimum pairwise gap accepted by [`simplex_fourier`].
pub const DEGENERACY_GAP: f64 = 1e-8;

/// A unit vector in `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereVector {
    coords: Vec<c64>,
}

impl SphereVector {
    pub fn coords(&self) -> &[c64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `(|u_1|², ..., |u_d|²)`.
    pub fn z(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Normalized vector of `d` i.i.d. standard complex Gaussians.
pub fn sample_sphere_vector(d: usize, rng: &mut RngStream) -> Result<SphereVector> {
    if d == 0 {
        return Err(Error::invalid("sphere dimension must be >= 1"));
    }
    let mut coords: Vec<c64> = (0..d).map(|_| rng.complex_normal(1.0)).collect();
    let norm = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut coords {
        *c /= norm;
    }
    Ok(SphereVector { coords })
}

/// `E Π Z_i^{α_i} = (d−1)! Π α_i! / (s+d−1)!` with `s = Σ α_i`.
///
/// ```
/// assert_eq!(bplab::sphere::sphere_moment(3, &[1, 1, 0]).unwrap(), 1.0 / 12.0);
/// ```
pub fn sphere_moment(d: usize, alpha: &[u32]) -> Result<f64> {
    if d == 0 {
        return Err(Error::invalid("sphere dimension must be >= 1"));
    }
    if alpha.len() != d {
        return Err(Error::invalid(format!(
            "multi-index has length {}, expected {d}",
            alpha.len()
        )));
    }
    let s: u64 = alpha.iter().map(|&a| a as u64).sum();
    let mut num = 1.0;
    for &a in alpha {
        for j in 2..=a {
            num *= j as f64;
        }
    }
    // (s+d−1)!/(d−1)! = d (d+1) ... (d+s−1)
    let mut den = 1.0;
    for j in 0..s {
        den *= (d as u64 + j) as f64;
    }
    Ok(num / den)
}

/// `E exp(i⟨a, Z⟩) = (d−1)! Σ_j e^{ia_j} / Π_{k≠j} i(a_j − a_k)` for pairwise
/// distinct `a`.
///
/// This is `(d−1)!` times the divided difference of `x -> e^{ix}/i^{d−1}` at
/// the points `a_j`. Entries closer than [`DEGENERACY_GAP`] are rejected.
pub fn simplex_fourier(a: &[f64]) -> Result<c64> {
    let d = a.len();
    if d < 2 {
        return Err(Error::invalid("simplex_fourier needs d >= 2"));
    }
    for i in 0..d {
        for j in i + 1..d {
            if (a[i] - a[j]).abs() < DEGENERACY_GAP {
                return Err(Error::Degenerate(format!(
                    "entries {i} and {j} differ by less than {DEGENERACY_GAP:e}"
                )));
            }
        }
    }
    let i = c64::new(0.0, 1.0);
    let mut sum = c64::new(0.0, 0.0);
    for j in 0..d {
        let mut den = c64::new(1.0, 0.0);
        for k in 0..d {
            if k != j {
                den *= i * (a[j] - a[k]);
            }
        }
        sum += c64::from_polar(1.0, a[j]) / den;
    }
    let fact: f64 = (1..d).map(|j| j as f64).product();
    Ok(sum * fact)
}

/// Monte Carlo estimate of the Hermitian model's Fourier transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdFourierEstimate {
    /// `exp(log_mean)`.
    pub value: c64,
    /// Sample mean of `d ψ(⟨Z, a⟩)`.
    pub log_mean: c64,
    /// Standard error of `log_mean`, combining real and imaginary parts.
    pub stderr: f64,
}

/// Estimates `exp(E d ψ(⟨Z, a⟩))` from `n_mc` fresh simplex draws, where `a`
/// holds the eigenvalues of the test matrix.
pub fn pd_fourier(t: &LevyTriple, eigs: &[f64], n_mc: usize, rng: &mut RngStream) -> Result<PdFourierEstimate> {
    if n_mc == 0 {
        return Err(Error::invalid("n_mc must be >= 1"));
    }
    let d = eigs.len();
    let draws = (0..n_mc)
        .map(|_| sample_sphere_vector(d, rng).map(|u| u.z()))
        .collect::<Result<Vec<_>>>()?;
    pd_fourier_with_draws(t, eigs, &draws)
}

/// As [`pd_fourier`], on caller-supplied simplex draws.
pub fn pd_fourier_with_draws(t: &LevyTriple, eigs: &[f64], draws: &[Vec<f64>]) -> Result<PdFourierEstimate> {
    let d = eigs.len();
    if d == 0 {
        return Err(Error::invalid("need at least one eigenvalue"));
    }
    if draws.is_empty() {
        return Err(Error::invalid("need at least one draw"));
    }
    let vals: Vec<c64> = draws
        .iter()
        .map(|z| {
            if z.len() != d {
                return Err(Error::invalid("draw length differs from the eigenvalue count"));
            }
            let x: f64 = z.iter().zip(eigs).map(|(zi, ai)| zi * ai).sum();
            Ok(levy_exponent(t, x) * d as f64)
        })
        .collect::<Result<_>>()?;
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<c64>() / n;
    let stderr = if vals.len() > 1 {
        let ss: f64 = vals.iter().map(|v| (v - mean).norm_sqr()).sum();
        (ss / (n - 1.0) / n).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(PdFourierEstimate {
        value: mean.exp(),
        log_mean: mean,
        stderr,
    })
}
