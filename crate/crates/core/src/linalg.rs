//! Dense complex linear algebra helpers on top of `faer`.

use faer::linalg::matmul::matmul;
use faer::{Accum, Mat, MatRef, Par, Side};

use crate::{c64, Error, Result, RngStream};

/// Matrix of i.i.d. complex Gaussians with `E|z|² = var`.
pub fn complex_gaussian_matrix(rows: usize, cols: usize, var: f64, rng: &mut RngStream) -> Mat<c64> {
    // fill column by column so the draw order matches the storage order
    let mut m = Mat::<c64>::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = rng.complex_normal(var);
        }
    }
    m
}

/// Largest `|M_ij − conj(M_ji)|`.
pub fn hermitian_defect(m: MatRef<'_, c64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest absolute entry.
pub fn max_abs(m: MatRef<'_, c64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            worst = worst.max(m[(i, j)].norm());
        }
    }
    worst
}

/// Replaces `m` by `(m + m*)/2`.
pub fn hermitize(m: &mut Mat<c64>) {
    let n = m.nrows();
    for j in 0..n {
        m[(j, j)] = c64::new(m[(j, j)].re, 0.0);
        for i in 0..j {
            let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order, read from the lower
/// triangle.
pub fn hermitian_eigenvalues(m: MatRef<'_, c64>) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::invalid("eigenvalues of a non-square matrix"));
    }
    let n = m.nrows();
    let diagonal = (0..n).all(|j| (j + 1..n).all(|i| m[(i, j)] == c64::new(0.0, 0.0)));
    if diagonal {
        let mut e: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
        e.sort_by(f64::total_cmp);
        return Ok(e);
    }
    m.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigensolver failed: {e:?}")))
}

/// `a b*`.
pub fn mul_adjoint(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    let mut out = Mat::<c64>::zeros(a.nrows(), b.nrows());
    matmul(out.as_mut(), Accum::Replace, a, b.adjoint(), c64::new(1.0, 0.0), Par::Seq);
    out
}

/// `a* a`.
pub fn gram(a: MatRef<'_, c64>) -> Mat<c64> {
    let mut out = Mat::<c64>::zeros(a.ncols(), a.ncols());
    matmul(out.as_mut(), Accum::Replace, a.adjoint(), a, c64::new(1.0, 0.0), Par::Seq);
    out
}

/// `a b`.
pub fn mul(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    let mut out = Mat::<c64>::zeros(a.nrows(), b.ncols());
    matmul(out.as_mut(), Accum::Replace, a, b, c64::new(1.0, 0.0), Par::Seq);
    out
}

/// Adds `a b*` to `acc`.
pub fn add_mul_adjoint(acc: &mut Mat<c64>, a: MatRef<'_, c64>, b: MatRef<'_, c64>) {
    matmul(acc.as_mut(), Accum::Add, a, b.adjoint(), c64::new(1.0, 0.0), Par::Seq);
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `diag(R)` moved into `Q`.
pub fn haar_unitary(d: usize, rng: &mut RngStream) -> Mat<c64> {
    let g = complex_gaussian_matrix(d, d, 1.0, rng);
    let qr = g.qr();
    let mut q = qr.compute_Q();
    let r = qr.R();
    for j in 0..d {
        let rjj = r[(j, j)];
        let n = rjj.norm();
        let phase = if n > 0.0 { rjj / n } else { c64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `‖U U* − I‖_max`.
pub fn unitarity_defect(u: MatRef<'_, c64>) -> f64 {
    let p = mul_adjoint(u, u);
    let n = p.nrows();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - c64::new(target, 0.0)).norm());
        }
    }
    worst
}
