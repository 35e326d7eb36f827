//! Moment and cumulant sequences.
//!
//! Classical cumulants expand moments over all set partitions, free cumulants
//! over noncrossing partitions:
//!
//! ```text
//! m_k = Σ_{π ∈ Part(k)} Π_{V ∈ π} c_{|V|}        (classical)
//! m_k = Σ_{π ∈ NC(k)}   Π_{V ∈ π} κ_{|V|}        (free)
//! ```
//!
//! [`moments_from_cumulants`] evaluates both through triangular recursions, so
//! long sequences are cheap. [`lattice_moments`] evaluates the partition sums
//! directly and serves as an oracle for small `k`.

use crate::partitions::{enumerate_noncrossing, enumerate_partitions, ENUMERATION_CAP};
use crate::{Error, Result};

/// Moments `m_1, ..., m_kmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    values: Vec<f64>,
}

impl MomentSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("moment sequence needs kmax >= 1"));
        }
        Ok(Self { values })
    }

    pub fn kmax(&self) -> usize {
        self.values.len()
    }

    /// The 1-based moment `m_k`.
    pub fn get(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CumulantKind {
    Classical,
    Free,
}

/// Cumulants `c_1, ..., c_kmax` of a fixed kind.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantSequence {
    kind: CumulantKind,
    values: Vec<f64>,
}

impl CumulantSequence {
    pub fn new(kind: CumulantKind, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("cumulant sequence needs kmax >= 1"));
        }
        Ok(Self { kind, values })
    }

    pub fn kind(&self) -> CumulantKind {
        self.kind
    }

    pub fn kmax(&self) -> usize {
        self.values.len()
    }

    /// The 1-based cumulant `c_k`.
    pub fn get(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Componentwise sum of two sequences of the same kind, truncated to the
    /// shorter length.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::invalid("cannot add cumulants of different kinds"));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.kind, values)
    }
}

fn binomial_rows(n: usize) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![1.0]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1.0; i + 1];
        for j in 1..i {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

/// Returns `p` with `p[s] = [x^{n-s}] M(x)^s` for `s` in `1..=n`, where
/// `M(x) = 1 + Σ m_j x^j`. Only `m_1 .. m_{n-1}` are read.
fn free_coefficients(m: &[f64], n: usize) -> Vec<f64> {
    // pow holds M^s truncated to degree n - 1
    let deg = n - 1;
    let mut coeff = vec![0.0; n + 1];
    let mut base = vec![0.0; deg + 1];
    base[0] = 1.0;
    for j in 1..=deg {
        base[j] = m[j - 1];
    }
    let mut pow = base.clone();
    for s in 1..=n {
        coeff[s] = pow[n - s];
        if s < n {
            let mut next = vec![0.0; deg + 1];
            for i in 0..=deg {
                if pow[i] == 0.0 {
                    continue;
                }
                for j in 0..=deg - i {
                    next[i + j] += pow[i] * base[j];
                }
            }
            pow = next;
        }
    }
    coeff
}

/// Moments from cumulants of either kind.
///
/// ```
/// use bplab::cumulants::{moments_from_cumulants, CumulantKind, CumulantSequence};
/// let c = CumulantSequence::new(CumulantKind::Free, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
/// assert_eq!(moments_from_cumulants(&c).values(), &[0.0, 1.0, 0.0, 2.0]);
/// ```
pub fn moments_from_cumulants(c: &CumulantSequence) -> MomentSequence {
    let kmax = c.kmax();
    let mut m: Vec<f64> = Vec::with_capacity(kmax);
    match c.kind {
        CumulantKind::Classical => {
            let binom = binomial_rows(kmax);
            for n in 1..=kmax {
                // m_n = Σ_j C(n-1, j-1) c_j m_{n-j}, m_0 = 1
                let mut acc = 0.0;
                for j in 1..=n {
                    let lower = if j == n { 1.0 } else { m[n - j - 1] };
                    acc += binom[n - 1][j - 1] * c.values[j - 1] * lower;
                }
                m.push(acc);
            }
        }
        CumulantKind::Free => {
            for n in 1..=kmax {
                let coeff = free_coefficients(&m, n);
                let mut acc = 0.0;
                for s in 1..=n {
                    acc += c.values[s - 1] * coeff[s];
                }
                m.push(acc);
            }
        }
    }
    MomentSequence { values: m }
}

/// Cumulants of the requested kind from moments; inverse of
/// [`moments_from_cumulants`].
pub fn cumulants_from_moments(m: &MomentSequence, kind: CumulantKind) -> CumulantSequence {
    let kmax = m.kmax();
    let mut c: Vec<f64> = Vec::with_capacity(kmax);
    match kind {
        CumulantKind::Classical => {
            let binom = binomial_rows(kmax);
            for n in 1..=kmax {
                let mut acc = m.values[n - 1];
                for j in 1..n {
                    acc -= binom[n - 1][j - 1] * c[j - 1] * m.values[n - j - 1];
                }
                c.push(acc);
            }
        }
        CumulantKind::Free => {
            for n in 1..=kmax {
                let coeff = free_coefficients(&m.values, n);
                let mut acc = m.values[n - 1];
                for s in 1..n {
                    acc -= c[s - 1] * coeff[s];
                }
                c.push(acc);
            }
        }
    }
    CumulantSequence { kind, values: c }
}

/// Reinterprets classical cumulants as the free cumulants of the image law.
pub fn bp_transport(c: &CumulantSequence) -> Result<CumulantSequence> {
    if c.kind != CumulantKind::Classical {
        return Err(Error::invalid("bp_transport expects classical cumulants"));
    }
    Ok(CumulantSequence {
        kind: CumulantKind::Free,
        values: c.values.clone(),
    })
}

/// Moments by explicit summation over `Part(k)` or `NC(k)`.
///
/// Exponential cost; `kmax` is limited to the enumeration cap.
pub fn lattice_moments(c: &CumulantSequence) -> Result<MomentSequence> {
    let kmax = c.kmax();
    if kmax > ENUMERATION_CAP {
        return Err(Error::invalid(format!(
            "lattice sums limited to k <= {ENUMERATION_CAP}"
        )));
    }
    let mut m = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let parts = match c.kind {
            CumulantKind::Classical => enumerate_partitions(k)?,
            CumulantKind::Free => enumerate_noncrossing(k)?,
        };
        let mut acc = 0.0;
        for p in &parts {
            acc += p
                .block_sizes()
                .iter()
                .map(|&s| c.values[s - 1])
                .product::<f64>();
        }
        m.push(acc);
    }
    Ok(MomentSequence { values: m })
}
