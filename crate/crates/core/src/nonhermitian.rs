//! Non-Hermitian random matrix samplers and symmetrized singular laws.
//!
//! The non-Hermitian family is defined for symmetric triples only. Its members
//! are compared with the free image through the symmetrized law of the
//! singular values, which puts mass `1/(2d)` at each `±s_i`.

use faer::Mat;

use crate::hermitian::{decompose, ScalarSampler, SampleOptions};
use crate::levy::{is_symmetric, LevyTriple};
use crate::linalg::{self, complex_gaussian_matrix};
use crate::spectra::EmpiricalDistribution;
use crate::sphere::sample_sphere_vector;
use crate::{c64, Error, Result, RngStream};

/// Tolerance used when checking that a triple is symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A d x d complex matrix.
#[derive(Clone, Debug)]
pub struct ComplexMatrixSample {
    entries: Mat<c64>,
}

impl ComplexMatrixSample {
    pub fn from_mat(m: Mat<c64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::invalid("sample must be square and nonempty"));
        }
        Ok(Self { entries: m })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Mat<c64> {
        &self.entries
    }

    /// Singular values in ascending order.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let g = linalg::gram(self.entries.as_ref());
        let eig = linalg::hermitian_eigenvalues(g.as_ref())?;
        let scale = eig.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);
        eig.into_iter()
            .map(|e| {
                if e >= 0.0 {
                    Ok(e.sqrt())
                } else if e >= -1e-10 * scale {
                    Ok(0.0)
                } else {
                    Err(Error::Numerical(format!("Gram matrix eigenvalue {e:e} is negative")))
                }
            })
            .collect()
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    Ok(())
}

/// `U diag(X_1, ..., X_d) V` with independent Haar `U`, `V`.
pub fn sample_k(mu: &ScalarSampler, d: usize, rng: &mut RngStream) -> Result<ComplexMatrixSample> {
    check_dim(d)?;
    let x: Vec<f64> = (0..d).map(|_| mu.draw(rng)).collect();
    let u = linalg::haar_unitary(d, rng);
    let v = linalg::haar_unitary(d, rng);
    let ux = Mat::from_fn(d, d, |i, j| u[(i, j)] * x[j]);
    Ok(ComplexMatrixSample {
        entries: linalg::mul(ux.as_ref(), v.as_ref()),
    })
}

/// Ginibre matrix with real and imaginary parts of each entry `N(0, var/(2d))`.
pub fn sample_l_gaussian(d: usize, var: f64, rng: &mut RngStream) -> Result<ComplexMatrixSample> {
    check_dim(d)?;
    if !(var.is_finite() && var >= 0.0) {
        return Err(Error::invalid(format!("variance {var} is not >= 0")));
    }
    Ok(ComplexMatrixSample {
        entries: complex_gaussian_matrix(d, d, var / d as f64, rng),
    })
}

/// `Σ_k x_k u_k v_k*` with `N ~ Poisson(d λ)` terms, `x_k` i.i.d. from a
/// symmetric `rho` and independent uniform unit vectors `u_k`, `v_k`.
pub fn sample_l_compound_poisson(rho: &ScalarSampler, lambda: f64, d: usize, rng: &mut RngStream) -> Result<ComplexMatrixSample> {
    check_dim(d)?;
    if !rho.is_symmetric() {
        return Err(Error::invalid("jump law must be symmetric"));
    }
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::invalid(format!("intensity {lambda} is not >= 0")));
    }
    let n = rng.poisson(d as f64 * lambda) as usize;
    let mut acc = Mat::<c64>::zeros(d, d);
    let mut done = 0;
    while done < n {
        let c = (n - done).min(256);
        let mut a = Mat::<c64>::zeros(d, c);
        let mut b = Mat::<c64>::zeros(d, c);
        for k in 0..c {
            let x = rho.draw(rng);
            let u = sample_sphere_vector(d, rng)?;
            let v = sample_sphere_vector(d, rng)?;
            for i in 0..d {
                a[(i, k)] = u.coords()[i] * x;
                b[(i, k)] = v.coords()[i];
            }
        }
        linalg::add_mul_adjoint(&mut acc, a.as_ref(), b.as_ref());
        done += c;
    }
    Ok(ComplexMatrixSample { entries: acc })
}

/// Non-Hermitian model of a symmetric triple: a Ginibre block for the
/// Gaussian and small-jump part plus a compound Poisson block for the rest.
pub fn sample_l(t: &LevyTriple, d: usize, rng: &mut RngStream, opts: &SampleOptions) -> Result<ComplexMatrixSample> {
    check_dim(d)?;
    if !is_symmetric(t, SYMMETRY_TOL) {
        return Err(Error::invalid("the non-Hermitian model needs a symmetric triple"));
    }
    let dec = decompose(t, opts.inner_cut)?;
    let mut m = sample_l_gaussian(d, dec.gaussian_var, rng)?;
    if dec.tail.lambda > 0.0 {
        let rho = ScalarSampler::discrete(&dec.tail.rho)?;
        let tail = sample_l_compound_poisson(&rho, dec.tail.lambda, d, rng)?;
        m.entries += &tail.entries;
    }
    Ok(m)
}

/// Uniform law on `{±s_i}` for the singular values `s_i` of `m`.
pub fn symmetrized_singular_law(m: &ComplexMatrixSample) -> Result<EmpiricalDistribution> {
    let s = m.singular_values()?;
    let mut points = Vec::with_capacity(2 * s.len());
    points.extend(s.iter().rev().map(|x| -x));
    points.extend(s.iter().copied());
    EmpiricalDistribution::uniform(points)
}
