//! Spectral laws, reference laws and Cauchy transforms.
//!
//! The Cauchy transform of a law `ν` is `f(z) = ∫ dν(u)/(u − z)` on the upper
//! half-plane. The sup-distance between transforms over `Im z >= 1` metrizes
//! weak convergence; [`cauchy_sup_distance`] evaluates it on a finite grid,
//! which gives a lower bound.

use std::f64::consts::PI;

use crate::cumulants::{bp_transport, moments_from_cumulants, CumulantKind, CumulantSequence, MomentSequence};
use crate::hermitian::HermitianSample;
use crate::levy::{cumulants_from_triple, LevyTriple};
use crate::{c64, Error, Result};

/// A finitely supported probability law.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalDistribution {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Builds a law from points and positive weights, normalizing the weights.
    /// Exactly equal points are merged.
    pub fn new(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::invalid("need as many weights as points, at least one"));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("support points must be finite"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::invalid("weights must be positive"));
        }
        let mut pairs: Vec<(f64, f64)> = points.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        let mut pts: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut ws: Vec<f64> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            if pts.last() == Some(&x) {
                *ws.last_mut().unwrap() += w;
            } else {
                pts.push(x);
                ws.push(w);
            }
        }
        for w in &mut ws {
            *w /= total;
        }
        Ok(Self {
            points: pts,
            weights: ws,
        })
    }

    /// Uniform law on the given points, with multiplicity.
    pub fn uniform(points: Vec<f64>) -> Result<Self> {
        let n = points.len();
        Self::new(points, vec![1.0; n])
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Mixture with equal weights of several laws.
    pub fn pool(laws: &[EmpiricalDistribution]) -> Result<Self> {
        let mut pts = Vec::new();
        let mut ws = Vec::new();
        for l in laws {
            pts.extend_from_slice(&l.points);
            ws.extend(l.weights.iter().map(|w| w / laws.len() as f64));
        }
        Self::new(pts, ws)
    }
}

/// Spectral law of a Hermitian matrix: its eigenvalues with weight `1/d`.
pub fn esd(m: &HermitianSample) -> Result<EmpiricalDistribution> {
    EmpiricalDistribution::uniform(m.eigenvalues()?)
}

/// `m_k = Σ w_i x_i^k` for `k = 1..=kmax`.
///
/// Terms are summed in pairs from both ends of the support, so a law that is
/// symmetric about zero has odd moments exactly zero.
pub fn empirical_moments(nu: &EmpiricalDistribution, kmax: usize) -> Result<MomentSequence> {
    if kmax == 0 {
        return Err(Error::invalid("kmax must be >= 1"));
    }
    let n = nu.points.len();
    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let term = |i: usize| nu.weights[i] * nu.points[i].powi(k as i32);
        let mut acc = 0.0;
        for i in 0..n / 2 {
            acc += term(i) + term(n - 1 - i);
        }
        if n % 2 == 1 {
            acc += term(n / 2);
        }
        out.push(acc);
    }
    MomentSequence::new(out)
}

/// A closed-form target law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReferenceLaw {
    /// Semicircle with mean `m` and variance `r²`, supported on `[m − 2r, m + 2r]`.
    Semicircle { m: f64, r: f64 },
    /// Cauchy law with density `a/(π(a² + x²))`.
    Cauchy { a: f64 },
    /// Marchenko-Pastur law with index `lambda`.
    MarchenkoPastur { lambda: f64 },
    Dirac { a: f64 },
}

impl ReferenceLaw {
    pub fn semicircle(m: f64, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite() && m.is_finite()) {
            return Err(Error::invalid(format!("semicircle radius {r} must be positive")));
        }
        Ok(Self::Semicircle { m, r })
    }

    pub fn cauchy(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::invalid(format!("Cauchy scale {a} must be positive")));
        }
        Ok(Self::Cauchy { a })
    }

    pub fn marchenko_pastur(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::invalid(format!("index {lambda} must be >= 0")));
        }
        Ok(Self::MarchenkoPastur { lambda })
    }

    pub fn dirac(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::invalid("Dirac location must be finite"));
        }
        Ok(Self::Dirac { a })
    }

    /// Atoms `(location, mass)` of the law.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        match *self {
            Self::Dirac { a } => vec![(a, 1.0)],
            Self::MarchenkoPastur { lambda } if lambda < 1.0 => vec![(0.0, 1.0 - lambda)],
            _ => vec![],
        }
    }
}

/// Values of a Cauchy transform.
pub trait CauchyTransform {
    /// `f(z)`; requires `Im z > 0`.
    fn cauchy_transform(&self, z: c64) -> Result<c64>;
}

fn check_upper(z: c64) -> Result<()> {
    if !(z.im > 0.0) {
        return Err(Error::invalid(format!("Im z = {} must be positive", z.im)));
    }
    Ok(())
}

impl CauchyTransform for EmpiricalDistribution {
    fn cauchy_transform(&self, z: c64) -> Result<c64> {
        check_upper(z)?;
        Ok(self
            .points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w / (x - z))
            .sum())
    }
}

/// Marchenko-Pastur continuous part, integrated over `x = c + h cos θ`.
fn mp_continuous_transform(lambda: f64, z: c64) -> c64 {
    let c = 1.0 + lambda;
    let h = 2.0 * lambda.sqrt();
    let f = |theta: f64| {
        let (s, co) = theta.sin_cos();
        let x = c + h * co;
        if x <= 0.0 {
            return c64::new(0.0, 0.0);
        }
        let dens = h * h * s * s / (2.0 * PI * x);
        dens / (x - z)
    };
    // midpoint rule on [0, π]; doubling until stable
    let mut n = 64usize;
    let mid = |n: usize| {
        let step = PI / n as f64;
        (0..n).map(|j| f((j as f64 + 0.5) * step)).sum::<c64>() * step
    };
    let mut prev = mid(n);
    loop {
        n *= 2;
        let cur = mid(n);
        if (cur - prev).norm() <= 1e-13 || n >= 1 << 20 {
            return cur;
        }
        prev = cur;
    }
}

impl CauchyTransform for ReferenceLaw {
    fn cauchy_transform(&self, z: c64) -> Result<c64> {
        check_upper(z)?;
        Ok(match *self {
            Self::Dirac { a } => 1.0 / (a - z),
            Self::Cauchy { a } => -1.0 / (z + c64::new(0.0, a)),
            Self::Semicircle { m, r } => {
                let w = z - m;
                let root = (w * w - 4.0 * r * r).sqrt();
                let f1 = (-w + root) / (2.0 * r * r);
                let f2 = (-w - root) / (2.0 * r * r);
                if f1.im > 0.0 {
                    f1
                } else {
                    f2
                }
            }
            Self::MarchenkoPastur { lambda } => {
                let mut f = if lambda > 0.0 {
                    mp_continuous_transform(lambda, z)
                } else {
                    c64::new(0.0, 0.0)
                };
                for (x, w) in self.atoms() {
                    f += w / (x - z);
                }
                f
            }
        })
    }
}

/// Evaluation grid in the half-plane `Im z >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub real_range: f64,
    pub real_step: f64,
    pub imaginary_levels: Vec<f64>,
}

impl Default for GridSpec {
    /// `[−8, 8]` in steps of `0.05` at heights `1, 2, 4`.
    fn default() -> Self {
        Self {
            real_range: 8.0,
            real_step: 0.05,
            imaginary_levels: vec![1.0, 2.0, 4.0],
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.real_range >= 0.0 && self.real_range.is_finite()) {
            return Err(Error::invalid("real range must be >= 0"));
        }
        if !(self.real_step > 0.0 && self.real_step.is_finite()) {
            return Err(Error::invalid("real step must be positive"));
        }
        if self.imaginary_levels.is_empty() || self.imaginary_levels.iter().any(|&y| !(y >= 1.0 && y.is_finite())) {
            return Err(Error::invalid("imaginary levels must be nonempty and >= 1"));
        }
        Ok(())
    }

    /// Grid points, row by row.
    pub fn points(&self) -> Vec<c64> {
        let n = (2.0 * self.real_range / self.real_step).round() as usize;
        let mut out = Vec::with_capacity((n + 1) * self.imaginary_levels.len());
        for &y in &self.imaginary_levels {
            for j in 0..=n {
                out.push(c64::new(-self.real_range + j as f64 * self.real_step, y));
            }
        }
        out
    }
}

/// `max |f_1(z) − f_2(z)|` over the grid.
pub fn cauchy_sup_distance(a: &dyn CauchyTransform, b: &dyn CauchyTransform, grid: &GridSpec) -> Result<f64> {
    grid.validate()?;
    let mut worst: f64 = 0.0;
    for z in grid.points() {
        worst = worst.max((a.cauchy_transform(z)? - b.cauchy_transform(z)?).norm());
    }
    Ok(worst)
}

/// Density of the absolutely continuous part.
///
/// Dirac laws have none; for Marchenko-Pastur with `lambda < 1` the atom at
/// zero is reported by [`ReferenceLaw::atoms`].
pub fn reference_density(law: &ReferenceLaw, x: f64) -> Result<f64> {
    match *law {
        ReferenceLaw::Semicircle { m, r } => {
            let q = 4.0 * r * r - (x - m) * (x - m);
            Ok(if q > 0.0 { q.sqrt() / (2.0 * PI * r * r) } else { 0.0 })
        }
        ReferenceLaw::Cauchy { a } => Ok(a / (PI * (a * a + x * x))),
        ReferenceLaw::MarchenkoPastur { lambda } => {
            if x <= 0.0 || lambda == 0.0 {
                return Ok(0.0);
            }
            let q = 4.0 * lambda - (x - 1.0 - lambda).powi(2);
            Ok(if q > 0.0 { q.sqrt() / (2.0 * PI * x) } else { 0.0 })
        }
        ReferenceLaw::Dirac { a } => Err(Error::NoDensity(format!("Dirac mass at {a}"))),
    }
}

/// Moments `m_1..m_kmax` of a reference law.
///
/// ```
/// use bplab::spectra::{reference_moments, ReferenceLaw};
/// let mp = ReferenceLaw::marchenko_pastur(1.0).unwrap();
/// assert_eq!(reference_moments(&mp, 4).unwrap().values(), &[1.0, 2.0, 5.0, 14.0]);
/// ```
pub fn reference_moments(law: &ReferenceLaw, kmax: usize) -> Result<MomentSequence> {
    if kmax == 0 {
        return Err(Error::invalid("kmax must be >= 1"));
    }
    let free = |mut c: Vec<f64>| {
        c.resize(kmax, 0.0);
        CumulantSequence::new(CumulantKind::Free, c).map(|c| moments_from_cumulants(&c))
    };
    match *law {
        ReferenceLaw::Semicircle { m, r } => free(vec![m, r * r]),
        ReferenceLaw::MarchenkoPastur { lambda } => free(vec![lambda; kmax]),
        ReferenceLaw::Dirac { a } => free(vec![a]),
        ReferenceLaw::Cauchy { .. } => Err(Error::NoMoments("Cauchy law".into())),
    }
}

/// Moments of the free image of the law with triple `t`.
pub fn psi_image_moments(t: &LevyTriple, kmax: usize) -> Result<MomentSequence> {
    let c = cumulants_from_triple(t, kmax)?;
    Ok(moments_from_cumulants(&bp_transport(&c)?))
}

/// Histogram over the support range with `bins` equal bins.
pub fn histogram(nu: &EmpiricalDistribution, bins: usize) -> Result<Vec<(f64, f64)>> {
    let lo = nu.points[0];
    let hi = *nu.points.last().unwrap();
    if lo == hi {
        if bins == 0 {
            return Err(Error::invalid("bins must be >= 1"));
        }
        return Ok(vec![(lo, 1.0)]);
    }
    histogram_range(nu, bins, lo, hi)
}

/// Histogram over `[lo, hi]`; points outside are clamped into the end bins and
/// the last bin is closed on the right.
pub fn histogram_range(nu: &EmpiricalDistribution, bins: usize, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>> {
    if bins == 0 {
        return Err(Error::invalid("bins must be >= 1"));
    }
    if !(hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::invalid("histogram range must satisfy lo < hi"));
    }
    let width = (hi - lo) / bins as f64;
    let mut mass = vec![0.0; bins];
    for (&x, &w) in nu.points.iter().zip(&nu.weights) {
        let b = (((x - lo) / width).floor().max(0.0) as usize).min(bins - 1);
        mass[b] += w;
    }
    Ok(mass
        .into_iter()
        .enumerate()
        .map(|(i, m)| (lo + (i as f64 + 0.5) * width, m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy;

    #[test]
    fn empirical_construction() {
        let e = EmpiricalDistribution::new(vec![2.0, 1.0, 2.0], vec![1.0, 2.0, 1.0]).unwrap();
        assert_eq!(e.points(), &[1.0, 2.0]);
        assert_eq!(e.weights(), &[0.5, 0.5]);
        assert!(EmpiricalDistribution::new(vec![1.0], vec![0.0]).is_err());
        assert!(EmpiricalDistribution::uniform(vec![]).is_err());
    }

    #[test]
    fn moment_examples() {
        let p = EmpiricalDistribution::uniform(vec![1.5]).unwrap();
        assert_eq!(empirical_moments(&p, 3).unwrap().values(), &[1.5, 2.25, 3.375]);
        let s = EmpiricalDistribution::uniform(vec![-1.0, 1.0]).unwrap();
        assert_eq!(empirical_moments(&s, 4).unwrap().values(), &[0.0, 1.0, 0.0, 1.0]);
        let u = EmpiricalDistribution::uniform(vec![1.0, 2.0, 3.0]).unwrap();
        assert!((empirical_moments(&u, 2).unwrap().get(2) - 14.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn transform_examples() {
        let i = c64::new(0.0, 1.0);
        assert_eq!(ReferenceLaw::dirac(0.0).unwrap().cauchy_transform(i).unwrap(), i);
        let c = ReferenceLaw::cauchy(1.0).unwrap().cauchy_transform(i).unwrap();
        assert!((c - i * 0.5).norm() < 1e-15);
        assert!(ReferenceLaw::dirac(0.0).unwrap().cauchy_transform(c64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn semicircle_fixed_point() {
        let law = ReferenceLaw::semicircle(0.5, 1.3).unwrap();
        for z in GridSpec::default().points().into_iter().step_by(17) {
            let f = law.cauchy_transform(z).unwrap();
            let res = 1.3f64.powi(2) * f * f + (z - 0.5) * f + 1.0;
            assert!(res.norm() < 1e-12);
            assert!(f.im > 0.0);
        }
    }

    #[test]
    fn density_examples() {
        let sc = ReferenceLaw::semicircle(0.0, 1.0).unwrap();
        assert!((reference_density(&sc, 0.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert_eq!(reference_density(&sc, 2.5).unwrap(), 0.0);
        assert!((reference_density(&ReferenceLaw::cauchy(1.0).unwrap(), 0.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!(matches!(
            reference_density(&ReferenceLaw::dirac(1.0).unwrap(), 0.0),
            Err(Error::NoDensity(_))
        ));
    }

    #[test]
    fn moments_of_reference_laws() {
        let sc = ReferenceLaw::semicircle(0.0, 1.0).unwrap();
        assert_eq!(reference_moments(&sc, 6).unwrap().values(), &[0.0, 1.0, 0.0, 2.0, 0.0, 5.0]);
        let mp = ReferenceLaw::marchenko_pastur(0.5).unwrap();
        assert_eq!(reference_moments(&mp, 4).unwrap().values(), &[0.5, 0.75, 1.375, 2.8125]);
        let lam: f64 = 0.3;
        let m2 = reference_moments(&ReferenceLaw::marchenko_pastur(lam).unwrap(), 2).unwrap().get(2);
        assert!((m2 - (lam + lam * lam)).abs() < 1e-15);
        assert!(matches!(
            reference_moments(&ReferenceLaw::cauchy(1.0).unwrap(), 2),
            Err(Error::NoMoments(_))
        ));
        assert_eq!(reference_moments(&ReferenceLaw::dirac(2.0).unwrap(), 3).unwrap().values(), &[2.0, 4.0, 8.0]);
    }

    #[test]
    fn psi_images() {
        let g = psi_image_moments(&levy::gaussian(0.0, 1.0).unwrap(), 4).unwrap();
        assert_eq!(g.values(), &[0.0, 1.0, 0.0, 2.0]);
        let p = psi_image_moments(&levy::poisson(0.5).unwrap(), 4).unwrap();
        assert_eq!(p.values(), &[0.5, 0.75, 1.375, 2.8125]);
        let d = psi_image_moments(&levy::dirac(3.0).unwrap(), 3).unwrap();
        assert_eq!(d.values(), &[3.0, 9.0, 27.0]);
    }

    #[test]
    fn histograms() {
        let p = EmpiricalDistribution::uniform(vec![4.0]).unwrap();
        assert_eq!(histogram(&p, 5).unwrap(), vec![(4.0, 1.0)]);
        let u = EmpiricalDistribution::uniform(vec![0.0, 1.0]).unwrap();
        assert_eq!(histogram_range(&u, 2, 0.0, 1.0).unwrap(), vec![(0.25, 0.5), (0.75, 0.5)]);
        let v = EmpiricalDistribution::uniform((0..100).map(|i| (i as f64).sin()).collect()).unwrap();
        let h = histogram(&v, 7).unwrap();
        assert!((h.iter().map(|b| b.1).sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(histogram(&v, 0).is_err());
    }

    #[test]
    fn grid_distance_basics() {
        let g = GridSpec::default();
        let d0 = ReferenceLaw::dirac(0.0).unwrap();
        let d1 = ReferenceLaw::dirac(1.0).unwrap();
        assert_eq!(cauchy_sup_distance(&d0, &d0, &g).unwrap(), 0.0);
        let d = cauchy_sup_distance(&d0, &d1, &g).unwrap();
        // |1/(z−1) − 1/z| = 1/(|z||z−1|), largest at z = 1/2 + i
        let want = 1.0 / (1.25f64);
        assert!((d - want).abs() < 1e-12);
        let bad = GridSpec {
            imaginary_levels: vec![0.5],
            ..GridSpec::default()
        };
        assert!(cauchy_sup_distance(&d0, &d1, &bad).is_err());
    }
}
