//! Hermitian random matrix samplers.
//!
//! - [`sample_q`]: `U diag(X_1, ..., X_d) U*` with `U` Haar and `X_i` i.i.d.
//! - [`sample_p_gaussian`]: the Gaussian member of the Hermitian family, a GUE
//!   matrix plus an independent scalar Gaussian multiple of the identity.
//! - [`sample_p_compound_poisson`]: a Poisson number of weighted rank-one
//!   projections onto independent uniform sphere vectors.
//! - [`sample_p`]: any triple, by splitting it into a Gaussian block and a
//!   compound Poisson tail (see [`decompose`]).

use faer::Mat;

use crate::levy::{truncate, CompoundPoissonParams, FiniteMeasure, LevyTriple};
use crate::linalg;
use crate::sphere::sample_sphere_vector;
use crate::{c64, Error, Result, RngStream};

/// A d x d Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianSample {
    entries: Mat<c64>,
}

impl HermitianSample {
    /// Wraps a matrix, rejecting it if it is not Hermitian within `1e-10`
    /// relative to its largest entry, and symmetrizing it otherwise.
    pub fn from_mat(mut m: Mat<c64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::invalid("Hermitian sample must be square and nonempty"));
        }
        let defect = linalg::hermitian_defect(m.as_ref());
        if defect > 1e-10 * linalg::max_abs(m.as_ref()).max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        linalg::hermitize(&mut m);
        Ok(Self { entries: m })
    }

    pub(crate) fn symmetrized(mut m: Mat<c64>) -> Self {
        linalg::hermitize(&mut m);
        Self { entries: m }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Mat<c64> {
        &self.entries
    }

    pub fn into_entries(self) -> Mat<c64> {
        self.entries
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::hermitian_eigenvalues(self.entries.as_ref())
    }

    /// `(1/d) Tr M`.
    pub fn normalized_trace(&self) -> f64 {
        let d = self.dim();
        (0..d).map(|i| self.entries[(i, i)].re).sum::<f64>() / d as f64
    }

    /// Sum of two samples of the same size.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::invalid("dimension mismatch"));
        }
        Ok(Self {
            entries: &self.entries + &other.entries,
        })
    }
}

/// A real scalar law that can be sampled.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarSampler {
    Constant(f64),
    Gaussian { mean: f64, sd: f64 },
    /// Finite law; `cdf` holds cumulative probabilities.
    Discrete { points: Vec<f64>, cdf: Vec<f64> },
}

impl ScalarSampler {
    pub fn constant(c: f64) -> Self {
        Self::Constant(c)
    }

    pub fn gaussian(mean: f64, var: f64) -> Result<Self> {
        if !(var.is_finite() && var >= 0.0) {
            return Err(Error::invalid(format!("variance {var} is not >= 0")));
        }
        Ok(Self::Gaussian {
            mean,
            sd: var.sqrt(),
        })
    }

    /// Law with the atoms of a probability measure.
    pub fn discrete(rho: &FiniteMeasure) -> Result<Self> {
        if rho.is_empty() || !rho.is_probability() {
            return Err(Error::invalid(format!(
                "discrete law needs total mass 1, got {}",
                rho.total_mass()
            )));
        }
        let total = rho.total_mass();
        let mut acc = 0.0;
        let mut points = Vec::with_capacity(rho.atoms().len());
        let mut cdf = Vec::with_capacity(rho.atoms().len());
        for &(u, w) in rho.atoms() {
            acc += w / total;
            points.push(u);
            cdf.push(acc);
        }
        *cdf.last_mut().unwrap() = 1.0;
        Ok(Self::Discrete { points, cdf })
    }

    pub fn draw(&self, rng: &mut RngStream) -> f64 {
        match self {
            Self::Constant(c) => *c,
            Self::Gaussian { mean, sd } => mean + sd * rng.normal(),
            Self::Discrete { points, cdf } => {
                let u = rng.uniform();
                let i = cdf.partition_point(|&c| c < u).min(points.len() - 1);
                points[i]
            }
        }
    }

    /// Whether the law is invariant under `x -> -x`.
    pub fn is_symmetric(&self) -> bool {
        match self {
            Self::Constant(c) => *c == 0.0,
            Self::Gaussian { mean, .. } => *mean == 0.0,
            Self::Discrete { points, cdf } => {
                let n = points.len();
                let mass = |i: usize| if i == 0 { cdf[0] } else { cdf[i] - cdf[i - 1] };
                (0..n).all(|i| {
                    (points[i] + points[n - 1 - i]).abs() <= 1e-12 && (mass(i) - mass(n - 1 - i)).abs() <= 1e-12
                })
            }
        }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    Ok(())
}

/// Haar-distributed d x d unitary.
pub fn sample_haar_unitary(d: usize, rng: &mut RngStream) -> Result<Mat<c64>> {
    check_dim(d)?;
    Ok(linalg::haar_unitary(d, rng))
}

/// `U diag(X_1, ..., X_d) U*` with `X_i` i.i.d. from `mu` and `U` Haar.
pub fn sample_q(mu: &ScalarSampler, d: usize, rng: &mut RngStream) -> Result<HermitianSample> {
    check_dim(d)?;
    let x: Vec<f64> = (0..d).map(|_| mu.draw(rng)).collect();
    if let ScalarSampler::Constant(c) = mu {
        return Ok(HermitianSample {
            entries: Mat::from_fn(d, d, |i, j| if i == j { c64::new(*c, 0.0) } else { c64::new(0.0, 0.0) }),
        });
    }
    let u = linalg::haar_unitary(d, rng);
    let ux = Mat::from_fn(d, d, |i, j| u[(i, j)] * x[j]);
    Ok(HermitianSample::symmetrized(linalg::mul_adjoint(ux.as_ref(), u.as_ref())))
}

/// GUE matrix: real diagonal `N(0, var)`, off-diagonal entries with real and
/// imaginary parts `N(0, var/2)`.
pub fn sample_gue(d: usize, var: f64, rng: &mut RngStream) -> Result<Mat<c64>> {
    check_dim(d)?;
    let sd = var.sqrt();
    let mut m = Mat::<c64>::zeros(d, d);
    for j in 0..d {
        m[(j, j)] = c64::new(sd * rng.normal(), 0.0);
        for i in j + 1..d {
            let z = rng.complex_normal(var);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Ok(m)
}

/// Hermitian model of the normal law with mean `m` and variance `var`:
/// `√var (N + X/√(d+1) I) + m I` with `N` GUE of entry variance `1/(d+1)`
/// and `X` standard normal.
pub fn sample_p_gaussian(m: f64, var: f64, d: usize, rng: &mut RngStream) -> Result<HermitianSample> {
    check_dim(d)?;
    if !(var.is_finite() && var >= 0.0) {
        return Err(Error::invalid(format!("variance {var} is not >= 0")));
    }
    if var == 0.0 {
        return Ok(HermitianSample {
            entries: Mat::from_fn(d, d, |i, j| if i == j { c64::new(m, 0.0) } else { c64::new(0.0, 0.0) }),
        });
    }
    let s = 1.0 / (d as f64 + 1.0);
    let mut g = sample_gue(d, s, rng)?;
    let x = rng.normal() * s.sqrt();
    let sd = var.sqrt();
    for j in 0..d {
        for i in 0..d {
            g[(i, j)] *= sd;
        }
        g[(j, j)] += c64::new(sd * x + m, 0.0);
    }
    Ok(HermitianSample { entries: g })
}

const CHUNK: usize = 256;

/// `Σ_k w_k u_k u_k*` over independent uniform unit vectors `u_k`.
pub fn projection_sum(weights: &[f64], d: usize, rng: &mut RngStream) -> Result<HermitianSample> {
    check_dim(d)?;
    let mut acc = Mat::<c64>::zeros(d, d);
    for chunk in weights.chunks(CHUNK) {
        let mut a = Mat::<c64>::zeros(d, chunk.len());
        let mut b = Mat::<c64>::zeros(d, chunk.len());
        for (k, &w) in chunk.iter().enumerate() {
            let u = sample_sphere_vector(d, rng)?;
            for (i, &c) in u.coords().iter().enumerate() {
                a[(i, k)] = c * w;
                b[(i, k)] = c;
            }
        }
        linalg::add_mul_adjoint(&mut acc, a.as_ref(), b.as_ref());
    }
    Ok(HermitianSample::symmetrized(acc))
}

/// Hermitian model of the compound Poisson law: `N ~ Poisson(d λ)` rank-one
/// projections weighted by i.i.d. draws from `rho`.
pub fn sample_p_compound_poisson(rho: &ScalarSampler, lambda: f64, d: usize, rng: &mut RngStream) -> Result<HermitianSample> {
    check_dim(d)?;
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::invalid(format!("intensity {lambda} is not >= 0")));
    }
    let n = rng.poisson(d as f64 * lambda);
    let weights: Vec<f64> = (0..n).map(|_| rho.draw(rng)).collect();
    projection_sum(&weights, d, rng)
}

/// Options for the composite samplers.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SampleOptions {
    /// Jumps with `|u| <= inner_cut` are replaced by a Gaussian with the same
    /// mean and variance. Defaults to half the smallest nonzero atom location.
    pub inner_cut: Option<f64>,
}

/// A triple split into a Gaussian block and a compound Poisson tail.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub cut: f64,
    /// Mean of the Gaussian block: first cumulant of the inner triple.
    pub gaussian_mean: f64,
    /// Variance of the Gaussian block: `G({0})` plus the substituted part.
    pub gaussian_var: f64,
    /// Variance contributed by atoms in `0 < |u| <= cut`; zero means the
    /// decomposition is exact.
    pub substituted_var: f64,
    pub tail: CompoundPoissonParams,
}

/// Default cut: half the smallest nonzero `|u|` among the atoms of `G`.
/// Measures without such atoms get a cut of 1.
pub fn default_cut(t: &LevyTriple) -> f64 {
    let smallest = t
        .g
        .atoms()
        .iter()
        .map(|a| a.0.abs())
        .filter(|&u| u > crate::levy::MERGE_TOL)
        .fold(f64::INFINITY, f64::min);
    if smallest.is_finite() {
        0.5 * smallest
    } else {
        1.0
    }
}

/// Splits `t` at `cut` (or the default cut).
///
/// ```
/// use bplab::{hermitian::decompose, levy};
/// let d = decompose(&levy::poisson(2.0).unwrap(), None).unwrap();
/// assert_eq!((d.gaussian_mean, d.gaussian_var, d.tail.lambda), (0.0, 0.0, 2.0));
/// ```
pub fn decompose(t: &LevyTriple, cut: Option<f64>) -> Result<Decomposition> {
    let cut = cut.unwrap_or_else(|| default_cut(t));
    if !(cut > 0.0 && cut.is_finite()) {
        return Err(Error::invalid(format!("inner cut {cut} must be positive")));
    }
    let (inner, tail) = truncate(t, cut)?;
    let sigma2 = inner.gaussian_variance();
    let total_var = inner.g.integrate(|u| 1.0 + u * u);
    Ok(Decomposition {
        cut,
        gaussian_mean: inner.gamma + inner.g.integrate(|u| u),
        gaussian_var: total_var,
        substituted_var: (total_var - sigma2).max(0.0),
        tail,
    })
}

/// Hermitian model of the law with triple `t`.
pub fn sample_p(t: &LevyTriple, d: usize, rng: &mut RngStream, opts: &SampleOptions) -> Result<HermitianSample> {
    check_dim(d)?;
    let dec = decompose(t, opts.inner_cut)?;
    let mut m = sample_p_gaussian(dec.gaussian_mean, dec.gaussian_var, d, rng)?;
    if dec.tail.lambda > 0.0 {
        let rho = ScalarSampler::discrete(&dec.tail.rho)?;
        let tail = sample_p_compound_poisson(&rho, dec.tail.lambda, d, rng)?;
        m.entries += &tail.entries;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy;

    #[test]
    fn constant_q_is_scalar() {
        let mut r = RngStream::new(0, 0);
        let m = sample_q(&ScalarSampler::constant(2.5), 4, &mut r).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 2.5 } else { 0.0 };
                assert_eq!(m.entries()[(i, j)], c64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn q_spectrum_is_diagonal() {
        let mu = ScalarSampler::gaussian(0.0, 1.0).unwrap();
        let mut r = RngStream::new(1, 0);
        let m = sample_q(&mu, 30, &mut r).unwrap();
        let mut r2 = RngStream::new(1, 0);
        let mut x: Vec<f64> = (0..30).map(|_| mu.draw(&mut r2)).collect();
        x.sort_by(f64::total_cmp);
        for (a, b) in m.eigenvalues().unwrap().iter().zip(&x) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn gaussian_degenerate_and_d1() {
        let mut r = RngStream::new(2, 0);
        let m = sample_p_gaussian(1.5, 0.0, 3, &mut r).unwrap();
        assert_eq!(m.eigenvalues().unwrap(), vec![1.5; 3]);
        assert!(sample_p_gaussian(0.0, -1.0, 3, &mut r).is_err());
        let m = sample_p_gaussian(0.0, 1.0, 1, &mut r).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.entries()[(0, 0)].im, 0.0);
    }

    #[test]
    fn compound_poisson_zero_and_rank() {
        let mut r = RngStream::new(3, 0);
        let rho = ScalarSampler::constant(1.0);
        let m = sample_p_compound_poisson(&rho, 0.0, 5, &mut r).unwrap();
        assert_eq!(m.eigenvalues().unwrap(), vec![0.0; 5]);
        let m = projection_sum(&[1.0, 1.0], 6, &mut r).unwrap();
        let e = m.eigenvalues().unwrap();
        assert!(e[..4].iter().all(|x| x.abs() < 1e-12));
        assert!((e.iter().sum::<f64>() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_examples() {
        let dec = decompose(&levy::gaussian(1.0, 2.0).unwrap(), None).unwrap();
        assert_eq!((dec.gaussian_mean, dec.gaussian_var, dec.tail.lambda), (1.0, 2.0, 0.0));
        let dec = decompose(&levy::poisson(0.5).unwrap(), Some(0.9)).unwrap();
        assert_eq!(dec.gaussian_mean, 0.0);
        assert_eq!(dec.gaussian_var, 0.0);
        assert_eq!(dec.tail.lambda, 0.5);
        assert_eq!(dec.tail.rho.atoms(), &[(1.0, 1.0)]);
        assert!(decompose(&levy::poisson(0.5).unwrap(), Some(0.0)).is_err());
        let dec = decompose(&levy::cauchy(1.0, 2001).unwrap(), Some(0.05)).unwrap();
        assert!(dec.substituted_var > 0.0);
        assert!((dec.substituted_var - 2.0 * 0.05 / std::f64::consts::PI).abs() < 2e-3);
    }

    #[test]
    fn discrete_sampler() {
        let rho = FiniteMeasure::new(vec![(-1.0, 0.5), (1.0, 0.5)]).unwrap();
        let s = ScalarSampler::discrete(&rho).unwrap();
        assert!(s.is_symmetric());
        let mut r = RngStream::new(5, 0);
        let n = 20_000;
        let mean = (0..n).map(|_| s.draw(&mut r)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03);
        assert!(!ScalarSampler::constant(1.0).is_symmetric());
        assert!(ScalarSampler::discrete(&FiniteMeasure::dirac(1.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn from_mat_checks() {
        let m = Mat::<c64>::from_fn(2, 2, |i, j| c64::new((i + 2 * j) as f64, 0.0));
        assert!(matches!(HermitianSample::from_mat(m), Err(Error::NotHermitian(_))));
    }
}
