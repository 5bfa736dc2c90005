//! Thin helpers over nalgebra's dense complex matrices.
//!
//! Everything in this crate works with dynamically sized matrices over
//! `Complex64`; dimensions stay small (d <= 16), so dense eigendecomposition
//! is always acceptable.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Largest entry modulus; the max norm used by every residual check.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Max-norm distance between two matrices of equal shape.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// Max |m - m†|.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Max |u†u - I|.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

/// Real part of tr(ab); for Hermitian a, b the trace is real up to rounding.
pub fn trace_product_re(a: &CMatrix, b: &CMatrix) -> f64 {
    trace_product(a, b).re
}

/// tr(ab) without forming the product matrix.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::ZERO;
    for r in 0..n {
        for c in 0..n {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Eigenvalues of a Hermitian matrix, ascending. The caller guarantees
/// Hermiticity; only the Hermitian part is seen by the solver.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)[0]
}

/// Principal square root of a PSD Hermitian matrix; eigenvalues below zero by
/// rounding are clamped to zero.
pub fn principal_sqrt(m: &CMatrix) -> CMatrix {
    let eig = m.clone().symmetric_eigen();
    let d = m.nrows();
    let mut out = CMatrix::zeros(d, d);
    for (idx, lambda) in eig.eigenvalues.iter().enumerate() {
        let root = lambda.max(0.0).sqrt();
        if root > 0.0 {
            let v = eig.eigenvectors.column(idx);
            out += (v * v.adjoint()).scale(root);
        }
    }
    out
}

/// Inverse principal square root of a positive-definite Hermitian matrix.
/// Eigenvalues are floored at a small positive value so near-singular inputs
/// stay finite rather than exploding.
pub fn principal_inv_sqrt(m: &CMatrix) -> CMatrix {
    let eig = m.clone().symmetric_eigen();
    let d = m.nrows();
    let mut out = CMatrix::zeros(d, d);
    for (idx, lambda) in eig.eigenvalues.iter().enumerate() {
        let root = 1.0 / lambda.max(1e-300).sqrt();
        let v = eig.eigenvectors.column(idx);
        out += (v * v.adjoint()).scale(root);
    }
    out
}

/// v v† as a matrix.
pub fn outer(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// Unit vector spanning the range of a rank-1 projector, recovered from its
/// largest column. For p = ψψ† the column j equals ψ·conj(ψ_j), so the
/// normalized largest column is ψ up to a global phase.
pub fn rank1_vector(p: &CMatrix) -> CVector {
    let d = p.nrows();
    let mut best = 0;
    let mut best_norm = 0.0;
    for j in 0..d {
        let n = p.column(j).norm();
        if n > best_norm {
            best_norm = n;
            best = j;
        }
    }
    let col = p.column(best).into_owned();
    col.unscale(best_norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_x() {
        let sx = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let ev = hermitian_eigenvalues(&sx);
        assert_relative_eq!(ev[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn hermitian_eigenvalues_of_complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = CMatrix::from_row_slice(2, 2, &[c(2., 0.), c(0., 1.), c(0., -1.), c(2., 0.)]);
        let ev = hermitian_eigenvalues(&m);
        assert_relative_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn principal_sqrt_squares_back() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2., 0.), c(0., 1.), c(0., -1.), c(2., 0.)]);
        let root = principal_sqrt(&m);
        assert!(max_abs_diff(&(&root * &root), &m) < 1e-13);
        assert!(hermiticity_residual(&root) < 1e-13);
    }

    #[test]
    fn rank1_vector_recovers_span() {
        let v = CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let p = outer(&v);
        let r = rank1_vector(&p);
        // Same projector regardless of recovered phase.
        assert!(max_abs_diff(&outer(&r), &p) < 1e-14);
        assert_relative_eq!(r.norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn trace_product_matches_full_product() {
        let a = CMatrix::from_row_slice(2, 2, &[c(1., 2.), c(3., -1.), c(0., 1.), c(2., 0.)]);
        let b = CMatrix::from_row_slice(2, 2, &[c(-1., 0.), c(1., 1.), c(2., -2.), c(0., 3.)]);
        let direct = (&a * &b).trace();
        let fast = trace_product(&a, &b);
        assert_relative_eq!(fast.re, direct.re, epsilon = 1e-14);
        assert_relative_eq!(fast.im, direct.im, epsilon = 1e-14);
    }
}
