//! Levy triples `(γ, G)` and their calculus.
//!
//! A triple pairs a real drift `γ` with a finite measure `G` on the real line.
//! Its Levy exponent is
//!
//! ```text
//! ψ(x) = iγx + ∫ (e^{ixu} − 1 − ixu/(1+u²)) (1+u²)/u² dG(u)
//! ```
//!
//! with the integrand read as `−x²/2` at `u = 0`, so `G({0})` is the Gaussian
//! variance. Measures here are purely atomic; continuous measures such as the
//! Cauchy one are discretized by [`cauchy`].

use std::f64::consts::PI;

use serde_json::{json, Value};

use crate::cumulants::{CumulantKind, CumulantSequence};
use crate::{c64, Error, Result};

/// Locations closer than this are merged into one atom.
pub const MERGE_TOL: f64 = 1e-12;

const PROB_TOL: f64 = 1e-9;

/// A nonnegative atomic measure on the real line, atoms sorted by location.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FiniteMeasure {
    atoms: Vec<(f64, f64)>,
}

impl FiniteMeasure {
    /// Builds a measure from `(location, weight)` pairs.
    ///
    /// Locations within [`MERGE_TOL`] are merged and zero weights dropped.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        for &(u, w) in &atoms {
            if !u.is_finite() {
                return Err(Error::invalid(format!("atom location {u} is not finite")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::invalid(format!("atom weight {w} at {u} is not >= 0")));
            }
        }
        Ok(Self::from_valid(atoms))
    }

    fn from_valid(mut atoms: Vec<(f64, f64)>) -> Self {
        atoms.retain(|&(_, w)| w > 0.0);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (u, w) in atoms {
            match merged.last_mut() {
                Some(last) if (u - last.0).abs() <= MERGE_TOL => last.1 += w,
                _ => merged.push((u, w)),
            }
        }
        Self { atoms: merged }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `w` times the unit mass at `u`.
    pub fn dirac(u: f64, w: f64) -> Result<Self> {
        Self::new(vec![(u, w)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// Mass of the atom at `u` (within [`MERGE_TOL`]), zero if none.
    pub fn mass_at(&self, u: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| (a.0 - u).abs() <= MERGE_TOL)
            .map(|a| a.1)
            .sum()
    }

    /// `Σ w f(u)` over the atoms.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms.iter().map(|&(u, w)| w * f(u)).sum()
    }

    /// Restriction to the atoms satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(f64) -> bool) -> Self {
        Self {
            atoms: self.atoms.iter().copied().filter(|a| keep(a.0)).collect(),
        }
    }

    /// Sum of two measures.
    pub fn add(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Self::from_valid(atoms)
    }

    /// Measure with every weight multiplied by `c >= 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::invalid(format!("scale factor {c} is not >= 0")));
        }
        Ok(Self::from_valid(self.atoms.iter().map(|&(u, w)| (u, w * c)).collect()))
    }

    /// Whether the total mass is one within a relative `1e-9`.
    pub fn is_probability(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= PROB_TOL
    }

    /// Whether the atom multiset is invariant under `u -> -u` within `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.atoms.len();
        (0..n).all(|i| {
            let (u, w) = self.atoms[i];
            let (v, x) = self.atoms[n - 1 - i];
            (u + v).abs() <= tol && (w - x).abs() <= tol
        })
    }

    /// Characteristic function `Σ w e^{ixu}`.
    pub fn fourier(&self, x: f64) -> c64 {
        self.atoms
            .iter()
            .map(|&(u, w)| c64::from_polar(w, x * u))
            .sum()
    }

    /// Atom-by-atom comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.atoms.len() == other.atoms.len()
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol)
    }
}

/// A drift and a finite measure describing an infinitely divisible law.
#[derive(Clone, Debug, PartialEq)]
pub struct LevyTriple {
    pub gamma: f64,
    pub g: FiniteMeasure,
}

impl LevyTriple {
    pub fn new(gamma: f64, g: FiniteMeasure) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::invalid(format!("drift {gamma} is not finite")));
        }
        Ok(Self { gamma, g })
    }

    /// `G({0})`.
    pub fn gaussian_variance(&self) -> f64 {
        self.g.mass_at(0.0)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.gamma - other.gamma).abs() <= tol && self.g.approx_eq(&other.g, tol)
    }
}

/// Jump intensity, jump law and drift correction of a truncated triple.
#[derive(Clone, Debug, PartialEq)]
pub struct CompoundPoissonParams {
    pub lambda: f64,
    pub rho: FiniteMeasure,
    pub drift_correction: f64,
}

/// Integrand of the exponent at a single atom location `u`:
/// `(e^{ixu} − 1 − ixu/(1+u²)) (1+u²)/u²`, extended by `−x²/2` at `u = 0`.
///
/// Written as `Re = −x²(1+u²) sinc²(xu/2)/2`, `Im = sin(xu) + x² (sin(xu) − xu)/(xu)²`,
/// which has no cancellation for small or large `xu`.
fn kernel(x: f64, u: f64) -> c64 {
    if x == 0.0 {
        return c64::new(0.0, 0.0);
    }
    let y = x * u;
    let h = 0.5 * y;
    let sinc = if h == 0.0 { 1.0 } else { h.sin() / h };
    let re = -0.5 * x * x * (1.0 + u * u) * sinc * sinc;
    // (sin y − y)/y²
    let s = if y.abs() < 0.1 {
        let y2 = y * y;
        y * (-1.0 / 6.0 + y2 * (1.0 / 120.0 + y2 * (-1.0 / 5040.0 + y2 / 362_880.0)))
    } else {
        (y.sin() - y) / (y * y)
    };
    c64::new(re, y.sin() + x * x * s)
}

/// The Levy exponent `ψ(x)`; `exp(ψ)` is the Fourier transform of the law.
///
/// ```
/// let t = bplab::levy::gaussian(0.0, 1.0).unwrap();
/// assert_eq!(bplab::levy::levy_exponent(&t, 2.0).re, -2.0);
/// ```
pub fn levy_exponent(t: &LevyTriple, x: f64) -> c64 {
    let mut acc = c64::new(0.0, t.gamma * x);
    for &(u, w) in t.g.atoms() {
        acc += kernel(x, u) * w;
    }
    acc
}

/// Classical cumulants `c_1 = γ + ∫u dG`, `c_k = ∫u^{k−2}(1+u²) dG` for `k >= 2`.
pub fn cumulants_from_triple(t: &LevyTriple, kmax: usize) -> Result<CumulantSequence> {
    if kmax == 0 {
        return Err(Error::invalid("kmax must be >= 1"));
    }
    let mut c = Vec::with_capacity(kmax);
    c.push(t.gamma + t.g.integrate(|u| u));
    for k in 2..=kmax {
        c.push(t.g.integrate(|u| u.powi(k as i32 - 2) * (1.0 + u * u)));
    }
    CumulantSequence::new(CumulantKind::Classical, c)
}

/// Triple of the compound Poisson law with jump law `rho` and intensity `lambda`.
pub fn compound_poisson_triple(rho: &FiniteMeasure, lambda: f64) -> Result<LevyTriple> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::invalid(format!("intensity {lambda} is not >= 0")));
    }
    if lambda == 0.0 {
        return LevyTriple::new(0.0, FiniteMeasure::zero());
    }
    if !rho.is_probability() {
        return Err(Error::invalid(format!(
            "jump law has mass {}, expected 1",
            rho.total_mass()
        )));
    }
    let gamma = lambda * rho.integrate(|u| u / (1.0 + u * u));
    let g = FiniteMeasure::from_valid(
        rho.atoms()
            .iter()
            .map(|&(u, w)| (u, lambda * w * u * u / (1.0 + u * u)))
            .collect(),
    );
    LevyTriple::new(gamma, g)
}

/// Splits a triple at `cut` into a small-jump part and a compound Poisson tail.
///
/// The inner triple keeps the atoms in `[−cut, cut]` with drift `γ + a`; the
/// tail collects the atoms beyond `cut`. Convolving the inner triple with
/// `compound_poisson_triple(rho, lambda)` gives back the input.
///
/// ```
/// use bplab::levy::{truncate, FiniteMeasure, LevyTriple};
/// let g = FiniteMeasure::new(vec![(0.0, 1.0), (2.0, 0.5)]).unwrap();
/// let (inner, tail) = truncate(&LevyTriple::new(0.0, g).unwrap(), 1.0).unwrap();
/// assert_eq!(inner.gamma, -0.25);
/// assert_eq!(tail.lambda, 0.625);
/// ```
pub fn truncate(t: &LevyTriple, cut: f64) -> Result<(LevyTriple, CompoundPoissonParams)> {
    if !(cut > 0.0 && cut.is_finite()) {
        return Err(Error::invalid(format!("cut {cut} must be positive")));
    }
    let inner_g = t.g.restrict(|u| u.abs() <= cut);
    let outer = t.g.restrict(|u| u.abs() > cut);
    let lambda = outer.integrate(|u| (1.0 + u * u) / (u * u));
    let a = -outer.integrate(|u| 1.0 / u);
    let rho = if lambda > 0.0 {
        FiniteMeasure::from_valid(
            outer
                .atoms()
                .iter()
                .map(|&(u, w)| (u, (1.0 + u * u) / (u * u) * w / lambda))
                .collect(),
        )
    } else {
        FiniteMeasure::zero()
    };
    Ok((
        LevyTriple::new(t.gamma + a, inner_g)?,
        CompoundPoissonParams {
            lambda,
            rho,
            drift_correction: a,
        },
    ))
}

/// Triple of the classical convolution: drifts and measures add.
pub fn convolve(t1: &LevyTriple, t2: &LevyTriple) -> LevyTriple {
    LevyTriple {
        gamma: t1.gamma + t2.gamma,
        g: t1.g.add(&t2.g),
    }
}

/// Whether `|γ| <= tol` and `G` is symmetric within `tol`.
pub fn is_symmetric(t: &LevyTriple, tol: f64) -> bool {
    t.gamma.abs() <= tol && t.g.is_symmetric(tol)
}

/// Normal law with mean `m` and variance `var`.
pub fn gaussian(m: f64, var: f64) -> Result<LevyTriple> {
    if !(var.is_finite() && var >= 0.0) {
        return Err(Error::invalid(format!("variance {var} is not >= 0")));
    }
    LevyTriple::new(m, FiniteMeasure::new(vec![(0.0, var)])?)
}

/// Poisson law with mean `lambda`.
pub fn poisson(lambda: f64) -> Result<LevyTriple> {
    compound_poisson_triple(&FiniteMeasure::dirac(1.0, 1.0)?, lambda)
}

/// Unit mass at `a`.
pub fn dirac(a: f64) -> Result<LevyTriple> {
    LevyTriple::new(a, FiniteMeasure::zero())
}

/// Discretized Cauchy law with scale `a` on `n_nodes` atoms plus two tail atoms.
///
/// Under `u = tan θ` the measure `a/(π(1+u²)) du` becomes `(a/π) dθ`; nodes
/// are midpoints of `n_nodes` equal cells of `[−atan T, atan T]` with
/// `T = 1000 a`, and the mass beyond `±T` sits at `±T`.
///
/// ```
/// let t = bplab::levy::cauchy(1.0, 401).unwrap();
/// let psi = bplab::levy::levy_exponent(&t, 2.0);
/// assert!((psi.re + 2.0).abs() < 0.02);
/// ```
pub fn cauchy(a: f64, n_nodes: usize) -> Result<LevyTriple> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!("Cauchy scale {a} must be positive")));
    }
    if n_nodes < 8 {
        return Err(Error::invalid(format!("need at least 8 nodes, got {n_nodes}")));
    }
    let big_t = 1000.0 * a;
    let theta_max = big_t.atan();
    let h = 2.0 * theta_max / n_nodes as f64;
    let mut atoms = Vec::with_capacity(n_nodes + 2);
    for j in 0..n_nodes {
        let theta = -theta_max + (j as f64 + 0.5) * h;
        atoms.push((theta.tan(), a / PI * h));
    }
    let tail = a / PI * (0.5 * PI - theta_max);
    atoms.push((-big_t, tail));
    atoms.push((big_t, tail));
    // Midpoint nodes are symmetric up to rounding; force exact symmetry.
    let n = atoms.len() - 2;
    for j in 0..n / 2 {
        atoms[n - 1 - j].0 = -atoms[j].0;
    }
    if n % 2 == 1 {
        atoms[n / 2].0 = 0.0;
    }
    LevyTriple::new(0.0, FiniteMeasure::new(atoms)?)
}

/// A triple description as read from JSON or TOML.
#[derive(Clone, Debug, PartialEq)]
pub enum TripleSpec {
    Atoms { gamma: f64, atoms: Vec<(f64, f64)> },
    Gaussian { mean: f64, var: f64 },
    Poisson { lambda: f64 },
    Cauchy { a: f64, nodes: usize },
    Dirac { a: f64 },
    Convolve(Vec<TripleSpec>),
}

/// Default node count for the Cauchy preset.
pub const DEFAULT_CAUCHY_NODES: usize = 2001;

fn number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::config(path, "expected a finite number"))
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::config(format!("{path}.{key}"), "missing field"))
}

impl TripleSpec {
    /// Parses a spec, reporting errors with a field path rooted at `path`.
    ///
    /// ```
    /// use bplab::levy::TripleSpec;
    /// let v: serde_json::Value = serde_json::from_str(r#"{"preset":"poisson","lambda":2}"#).unwrap();
    /// assert_eq!(TripleSpec::from_json(&v, "triple").unwrap(), TripleSpec::Poisson { lambda: 2.0 });
    /// ```
    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::config(path, "expected an object"))?;
        if let Some(list) = obj.get("convolve") {
            let p = format!("{path}.convolve");
            let arr = list
                .as_array()
                .ok_or_else(|| Error::config(&p, "expected an array of triple specs"))?;
            if arr.is_empty() {
                return Err(Error::config(&p, "empty convolution"));
            }
            let parts = arr
                .iter()
                .enumerate()
                .map(|(i, s)| Self::from_json(s, &format!("{p}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::Convolve(parts));
        }
        if let Some(preset) = obj.get("preset") {
            let name = preset
                .as_str()
                .ok_or_else(|| Error::config(format!("{path}.preset"), "expected a string"))?;
            let num = |key: &str| number(field(obj, key, path)?, &format!("{path}.{key}"));
            return match name {
                "gaussian" => Ok(Self::Gaussian {
                    mean: match obj.get("mean") {
                        Some(m) => number(m, &format!("{path}.mean"))?,
                        None => 0.0,
                    },
                    var: num("var")?,
                }),
                "poisson" => Ok(Self::Poisson { lambda: num("lambda")? }),
                "dirac" => Ok(Self::Dirac { a: num("a")? }),
                "cauchy" => {
                    let nodes = match obj.get("nodes") {
                        Some(n) => n.as_u64().ok_or_else(|| {
                            Error::config(format!("{path}.nodes"), "expected a positive integer")
                        })? as usize,
                        None => DEFAULT_CAUCHY_NODES,
                    };
                    Ok(Self::Cauchy { a: num("a")?, nodes })
                }
                other => Err(Error::config(
                    format!("{path}.preset"),
                    format!("unknown preset `{other}`"),
                )),
            };
        }
        let gamma = match obj.get("gamma") {
            Some(g) => number(g, &format!("{path}.gamma"))?,
            None => 0.0,
        };
        let p = format!("{path}.atoms");
        let list = field(obj, "atoms", path)?
            .as_array()
            .ok_or_else(|| Error::config(&p, "expected an array of [location, weight] pairs"))?;
        let mut atoms = Vec::with_capacity(list.len());
        for (i, a) in list.iter().enumerate() {
            let pi = format!("{p}[{i}]");
            match a.as_array().map(|x| x.as_slice()) {
                Some([u, w]) => atoms.push((
                    number(u, &format!("{pi}[0]"))?,
                    number(w, &format!("{pi}[1]"))?,
                )),
                _ => return Err(Error::config(pi, "expected [location, weight]")),
            }
        }
        Ok(Self::Atoms { gamma, atoms })
    }

    /// Parses a spec from JSON text.
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::config("triple", format!("invalid JSON: {e}")))?;
        Self::from_json(&v, "triple")
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Atoms { gamma, atoms } => json!({
                "gamma": gamma,
                "atoms": atoms.iter().map(|&(u, w)| json!([u, w])).collect::<Vec<_>>(),
            }),
            Self::Gaussian { mean, var } => json!({"preset": "gaussian", "mean": mean, "var": var}),
            Self::Poisson { lambda } => json!({"preset": "poisson", "lambda": lambda}),
            Self::Cauchy { a, nodes } => json!({"preset": "cauchy", "a": a, "nodes": nodes}),
            Self::Dirac { a } => json!({"preset": "dirac", "a": a}),
            Self::Convolve(parts) => {
                json!({"convolve": parts.iter().map(Self::to_json).collect::<Vec<_>>()})
            }
        }
    }

    /// Builds the triple.
    pub fn to_triple(&self) -> Result<LevyTriple> {
        match self {
            Self::Atoms { gamma, atoms } => LevyTriple::new(*gamma, FiniteMeasure::new(atoms.clone())?),
            Self::Gaussian { mean, var } => gaussian(*mean, *var),
            Self::Poisson { lambda } => poisson(*lambda),
            Self::Cauchy { a, nodes } => cauchy(*a, *nodes),
            Self::Dirac { a } => dirac(*a),
            Self::Convolve(parts) => {
                let mut acc = dirac(0.0)?;
                for p in parts {
                    acc = convolve(&acc, &p.to_triple()?);
                }
                Ok(acc)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: c64, b: c64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn measure_construction() {
        let m = FiniteMeasure::new(vec![(1.0, 0.5), (1.0 + 1e-13, 0.25), (0.0, 0.0), (-2.0, 1.0)]).unwrap();
        assert_eq!(m.atoms(), &[(-2.0, 1.0), (1.0, 0.75)]);
        assert_eq!(m.total_mass(), 1.75);
        assert!(FiniteMeasure::new(vec![(0.0, -1.0)]).is_err());
        assert!(FiniteMeasure::new(vec![(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn exponent_examples() {
        let g = gaussian(0.0, 1.0).unwrap();
        assert_eq!(levy_exponent(&g, 2.0), c64::new(-2.0, 0.0));
        assert_eq!(levy_exponent(&g, 1.0), c64::new(-0.5, 0.0));
        let p = poisson(1.0).unwrap();
        assert!(close(levy_exponent(&p, PI), c64::new(-2.0, 0.0), 1e-14));
        assert_eq!(levy_exponent(&p, 0.0), c64::new(0.0, 0.0));
        let d = dirac(3.0).unwrap();
        assert_eq!(levy_exponent(&d, 1.5), c64::new(0.0, 4.5));
    }

    #[test]
    fn kernel_branches_agree() {
        // the stable and direct forms coincide where both are accurate
        for &u in &[0.5, 0.9, 0.99, 1.0, 1.5] {
            for &x in &[-3.0, 0.7, 2.0] {
                let direct = (c64::from_polar(1.0, x * u) - 1.0 - c64::new(0.0, x * u / (1.0 + u * u)))
                    * ((1.0 + u * u) / (u * u));
                assert!(close(kernel(x, u), direct, 1e-13), "u={u} x={x}");
            }
        }
        assert_eq!(kernel(2.0, 0.0), c64::new(-2.0, 0.0));
        assert!(close(kernel(1.0, 1e-9), c64::new(-0.5, 0.0), 1e-8));
    }

    #[test]
    fn cumulant_examples() {
        let c = cumulants_from_triple(&gaussian(1.5, 2.0).unwrap(), 4).unwrap();
        assert_eq!(c.values(), &[1.5, 2.0, 0.0, 0.0]);
        let c = cumulants_from_triple(&poisson(3.0).unwrap(), 5).unwrap();
        assert_eq!(c.values(), &[3.0; 5]);
        let c = cumulants_from_triple(&dirac(-1.0).unwrap(), 3).unwrap();
        assert_eq!(c.values(), &[-1.0, 0.0, 0.0]);
        assert!(cumulants_from_triple(&dirac(0.0).unwrap(), 0).is_err());
    }

    #[test]
    fn compound_poisson_examples() {
        let t = compound_poisson_triple(&FiniteMeasure::dirac(1.0, 1.0).unwrap(), 1.0).unwrap();
        assert_eq!(t.gamma, 0.5);
        assert_eq!(t.g.atoms(), &[(1.0, 0.5)]);
        let sym = FiniteMeasure::new(vec![(1.0, 0.5), (-1.0, 0.5)]).unwrap();
        assert_eq!(compound_poisson_triple(&sym, 3.0).unwrap().gamma, 0.0);
        let z = compound_poisson_triple(&sym, 0.0).unwrap();
        assert_eq!(z, dirac(0.0).unwrap());
        assert!(compound_poisson_triple(&FiniteMeasure::dirac(1.0, 2.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn truncate_examples() {
        let g = FiniteMeasure::new(vec![(0.0, 1.0), (2.0, 0.5)]).unwrap();
        let t = LevyTriple::new(0.0, g).unwrap();
        let (inner, tail) = truncate(&t, 1.0).unwrap();
        assert_eq!(inner.gamma, -0.25);
        assert_eq!(inner.g.atoms(), &[(0.0, 1.0)]);
        assert_eq!(tail.lambda, 0.625);
        assert_eq!(tail.rho.atoms(), &[(2.0, 1.0)]);
        assert_eq!(tail.drift_correction, -0.25);

        let (inner, tail) = truncate(&t, 5.0).unwrap();
        assert_eq!(inner, t);
        assert_eq!(tail.lambda, 0.0);
        assert!(truncate(&t, 0.0).is_err());
    }

    #[test]
    fn convolve_and_symmetry() {
        let a = gaussian(1.0, 1.0).unwrap();
        let b = LevyTriple::new(2.0, FiniteMeasure::dirac(1.0, 0.3).unwrap()).unwrap();
        let c = convolve(&a, &b);
        assert_eq!(c.gamma, 3.0);
        assert_eq!(c.g.atoms(), &[(0.0, 1.0), (1.0, 0.3)]);
        assert_eq!(convolve(&c, &dirac(0.0).unwrap()), c);

        assert!(is_symmetric(&gaussian(0.0, 2.0).unwrap(), 0.0));
        assert!(!is_symmetric(&poisson(1.0).unwrap(), 1e-12));
        let s = LevyTriple::new(0.0, FiniteMeasure::new(vec![(1.0, 0.5), (-1.0, 0.5)]).unwrap()).unwrap();
        assert!(is_symmetric(&s, 0.0));
    }

    #[test]
    fn cauchy_discretization() {
        let t = cauchy(1.0, 401).unwrap();
        assert!((t.g.total_mass() - 1.0).abs() < 1e-12);
        assert!(is_symmetric(&t, 0.0));
        assert!((levy_exponent(&t, 2.0) - c64::new(-2.0, 0.0)).norm() <= 0.02);
        assert!(cauchy(1.0, 7).is_err());
        assert!(cauchy(0.0, 100).is_err());
    }

    #[test]
    fn spec_parsing() {
        let s = TripleSpec::parse(r#"{"convolve":[{"preset":"gaussian","mean":1,"var":2},{"gamma":0.5,"atoms":[[1,0.5]]}]}"#).unwrap();
        let t = s.to_triple().unwrap();
        assert_eq!(t.gamma, 1.5);
        assert_eq!(t.g.atoms(), &[(0.0, 2.0), (1.0, 0.5)]);
        assert_eq!(TripleSpec::from_json(&s.to_json(), "t").unwrap(), s);

        let err = TripleSpec::parse(r#"{"convolve":[{"preset":"poisson"}]}"#).unwrap_err();
        match err {
            Error::Config { path, .. } => assert_eq!(path, "triple.convolve[0].lambda"),
            e => panic!("{e}"),
        }
        let err = TripleSpec::parse(r#"{"atoms":[[1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Config { ref path, .. } if path == "triple.atoms[0]"));
        assert!(TripleSpec::parse(r#"{"preset":"levy"}"#).is_err());
        assert_eq!(
            TripleSpec::parse(r#"{"preset":"cauchy","a":1}"#).unwrap(),
            TripleSpec::Cauchy { a: 1.0, nodes: DEFAULT_CAUCHY_NODES }
        );
    }
}
