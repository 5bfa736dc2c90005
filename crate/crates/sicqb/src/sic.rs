//! SIC-POVM construction and verification.
//!
//! A SIC in dimension d is a set of d² rank-1 projectors Π_i with
//! tr(Π_iΠ_j) = (dδ_ij + 1)/(d+1); the effects E_i = Π_i/d form the
//! measurement. This module provides the built-in d = 2 and d = 3 exemplars,
//! Weyl-Heisenberg displacement operators and fiducial orbits, verification
//! reports, and the Frobenius objective that SICs minimize. The numerical
//! search lives in [`crate::search`].
//!
//! Element ordering is part of the public contract: orbit element i
//! (1-based) is the displacement X^a Z^b of the fiducial with i = a·d + b + 1.
//! Downstream probability vectors inherit this ordering.

use crate::error::{Result, SicError};
use crate::linalg::{
    hermiticity_residual, identity, max_abs, max_abs_diff, outer, rank1_vector, trace_product,
    CMatrix, CVector,
};
use crate::tol;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Default cap on the dimension accepted by the numerical search.
pub const DEFAULT_MAX_D: usize = 12;

/// Modulus below which an amplitude is treated as zero when pinning the
/// global phase of a fiducial.
const PHASE_PIVOT_FLOOR: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A unit vector whose Weyl-Heisenberg orbit is a SIC candidate.
///
/// Stored in a canonical gauge: unit norm, and the first amplitude of modulus
/// above 1e-9 made real and positive. The gauge pins serialized output; it
/// changes nothing about the orbit projectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiducial {
    d: usize,
    amplitudes: CVector,
}

impl Fiducial {
    /// Accepts amplitudes already normalized within 1e-12, then stores them
    /// renormalized exactly and phase-canonicalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = amplitudes.len();
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        let mut v = CVector::from_vec(amplitudes);
        let norm = v.norm();
        if (norm - 1.0).abs() > tol::EXACT {
            return Err(SicError::NotNormalized {
                residual: (norm - 1.0).abs(),
            });
        }
        v.unscale_mut(norm);
        canonicalize_phase(&mut v);
        Ok(Self { d, amplitudes: v })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }
}

/// Rotates a vector so its first amplitude of modulus above the pivot floor
/// is real and positive.
fn canonicalize_phase(v: &mut CVector) {
    let pivot = v.iter().find(|a| a.norm() > PHASE_PIVOT_FLOOR).copied();
    if let Some(a) = pivot {
        let phase = a.conj() / a.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

/// Where a SIC set came from; affects nothing numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Builtin,
    OrbitOfFiducial,
    Loaded,
}

/// d² candidate projectors in the contract ordering. Construction checks
/// shapes only; whether the set actually satisfies the SIC overlap condition
/// is [`verify_sic`]'s job.
#[derive(Clone, Debug)]
pub struct SicSet {
    d: usize,
    projectors: Vec<CMatrix>,
    provenance: Provenance,
}

impl SicSet {
    /// Wraps externally supplied projectors. Errors if the count is not d²
    /// or any matrix is not d×d.
    pub fn from_projectors(d: usize, projectors: Vec<CMatrix>) -> Result<Self> {
        Self::with_provenance(d, projectors, Provenance::Loaded)
    }

    fn with_provenance(d: usize, projectors: Vec<CMatrix>, provenance: Provenance) -> Result<Self> {
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        if projectors.len() != d * d {
            return Err(SicError::DimensionMismatch {
                what: "projector count",
                expected: d * d,
                got: projectors.len(),
            });
        }
        for p in &projectors {
            if p.nrows() != d || p.ncols() != d {
                return Err(SicError::DimensionMismatch {
                    what: "projector size",
                    expected: d,
                    got: p.nrows().max(p.ncols()),
                });
            }
        }
        Ok(Self {
            d,
            projectors,
            provenance,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of elements, always d².
    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    /// Projector Π_i by 0-based position (public element i+1).
    pub fn projector(&self, idx: usize) -> &CMatrix {
        &self.projectors[idx]
    }

    /// Effects E_i = Π_i/d.
    pub fn effects(&self) -> Vec<CMatrix> {
        let scale = 1.0 / self.d as f64;
        self.projectors.iter().map(|p| p.scale(scale)).collect()
    }

    /// Unit vectors spanning each projector, in element order. Valid for
    /// rank-1 sets (anything that passes verification); phases are arbitrary
    /// but fixed, and every gauge-invariant quantity built from them, such as
    /// the triple products S_ij S_jk S_ki, is unaffected.
    pub fn vectors(&self) -> Vec<CVector> {
        self.projectors.iter().map(rank1_vector).collect()
    }

    /// Gram matrix S_ij = ⟨ψ_i|ψ_j⟩ of the spanning vectors.
    pub fn overlap_gram(&self) -> CMatrix {
        let vs = self.vectors();
        let n = vs.len();
        CMatrix::from_fn(n, n, |i, j| vs[i].dotc(&vs[j]))
    }
}

/// The paper trail of a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct SicVerificationReport {
    pub d: usize,
    /// Max deviation of tr(Π_iΠ_j) from 1 (i = j) and 1/(d+1) (i ≠ j).
    pub max_overlap_deviation: f64,
    /// Max |Π_i² - Π_i| entry over all elements.
    pub max_idempotency_residual: f64,
    /// Max |(1/d)ΣΠ_i - I| entry.
    pub resolution_of_identity_residual: f64,
    /// Frobenius objective of the effects; equals the analytic bound for a
    /// true SIC.
    pub frobenius_f: f64,
    pub pass: bool,
}

/// The paper's explicit SICs: d = 2 from Pauli combinations, d = 3 from nine
/// vectors over the third root of unity.
pub fn builtin_sic(d: usize) -> Result<SicSet> {
    match d {
        2 => Ok(builtin_d2()),
        3 => Ok(builtin_d3()),
        _ => Err(SicError::UnsupportedBuiltin { d }),
    }
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

fn builtin_d2() -> SicSet {
    let signs: [[f64; 3]; 4] = [
        [1., 1., 1.],
        [1., -1., -1.],
        [-1., -1., 1.],
        [-1., 1., -1.],
    ];
    let s3 = 3.0_f64.sqrt();
    let (sx, sy, sz) = (pauli_x(), pauli_y(), pauli_z());
    let projectors = signs
        .iter()
        .map(|[a, b, g]| {
            let bloch = sx.scale(*a) + sy.scale(*b) + sz.scale(*g);
            (identity(2) + bloch.unscale(s3)).scale(0.5)
        })
        .collect();
    SicSet::with_provenance(2, projectors, Provenance::Builtin).expect("shape is fixed")
}

fn builtin_d3() -> SicSet {
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let wb = w.conj();
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let raw: [[Complex64; 3]; 9] = [
        [zero, one, -one],
        [-one, zero, one],
        [one, -one, zero],
        [zero, w, -wb],
        [-one, zero, wb],
        [one, -w, zero],
        [zero, wb, -w],
        [-one, zero, w],
        [one, -wb, zero],
    ];
    let projectors = raw
        .iter()
        .map(|row| {
            let v = CVector::from_row_slice(row);
            let v = v.unscale(v.norm());
            outer(&v)
        })
        .collect();
    SicSet::with_provenance(3, projectors, Provenance::Builtin).expect("shape is fixed")
}

/// Weyl-Heisenberg displacement X^a Z^b, where X|k⟩ = |k+1 mod d⟩ is the
/// cyclic shift and Z|k⟩ = e^{2πik/d}|k⟩ the clock.
pub fn wh_displacement(d: usize, a: usize, b: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(SicError::DimensionTooSmall { d });
    }
    if a >= d {
        return Err(SicError::IndexOutOfRange { index: a, len: d - 1 });
    }
    if b >= d {
        return Err(SicError::IndexOutOfRange { index: b, len: d - 1 });
    }
    let mut m = CMatrix::zeros(d, d);
    for k in 0..d {
        m[((k + a) % d, k)] = Complex64::from_polar(1.0, 2.0 * PI * (b * k) as f64 / d as f64);
    }
    Ok(m)
}

/// Orbit of a fiducial under all d² displacements, element i = a·d + b + 1.
/// Makes no claim that the result is a SIC; run [`verify_sic`] for that.
pub fn fiducial_orbit(f: &Fiducial) -> SicSet {
    let d = f.d();
    let mut projectors = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let disp = wh_displacement(d, a, b).expect("indices in range by construction");
            let v = disp * f.amplitudes();
            projectors.push(outer(&v));
        }
    }
    SicSet::with_provenance(d, projectors, Provenance::OrbitOfFiducial).expect("d² by construction")
}

/// Measures how far a candidate set is from the SIC conditions. `pass` means
/// every residual (overlaps, idempotency, resolution of identity) is below
/// `tolerance`; the Frobenius objective is informational.
pub fn verify_sic(s: &SicSet, tolerance: f64) -> SicVerificationReport {
    let d = s.d();
    let target_cross = 1.0 / (d as f64 + 1.0);
    let mut max_overlap = 0.0_f64;
    for i in 0..s.len() {
        for j in 0..s.len() {
            let ov = trace_product(s.projector(i), s.projector(j));
            let target = if i == j { 1.0 } else { target_cross };
            max_overlap = max_overlap.max((ov - target).norm());
        }
    }

    let mut max_idem = 0.0_f64;
    let mut sum = CMatrix::zeros(d, d);
    for p in s.projectors() {
        max_idem = max_idem
            .max(max_abs_diff(&(p * p), p))
            .max(hermiticity_residual(p));
        sum += p;
    }
    let resolution = max_abs(&(sum.unscale(d as f64) - identity(d)));

    let frobenius_f = frobenius_objective(&s.effects());
    let pass = max_overlap < tolerance && max_idem < tolerance && resolution < tolerance;
    SicVerificationReport {
        d,
        max_overlap_deviation: max_overlap,
        max_idempotency_residual: max_idem,
        resolution_of_identity_residual: resolution,
        frobenius_f,
        pass,
    }
}

/// Squared Frobenius distance of the effect Gram matrix from the identity:
/// F = Σ_i (1 - tr E_i²)² + Σ_{i≠j} (tr E_iE_j)². Accepts any effect list,
/// including degenerate ones with zero effects.
pub fn frobenius_objective(effects: &[CMatrix]) -> f64 {
    let n = effects.len();
    let mut f = 0.0;
    for i in 0..n {
        for j in 0..n {
            let t = trace_product(&effects[i], &effects[j]).re;
            if i == j {
                f += (1.0 - t) * (1.0 - t);
            } else {
                f += t * t;
            }
        }
    }
    f
}

/// The analytic lower bound on F for a list of N effects:
/// (1/N)(Σ_i (1 - tr E_i²))² + (1/(N² - N))(Σ_{i≠j} tr E_iE_j)².
/// Equality holds exactly when all diagonal terms agree and all cross terms
/// agree, which for N = d² effects characterizes a SIC.
pub fn frobenius_lower_bound(effects: &[CMatrix]) -> f64 {
    let n = effects.len() as f64;
    let mut diag = 0.0;
    let mut cross = 0.0;
    for (i, ei) in effects.iter().enumerate() {
        for (j, ej) in effects.iter().enumerate() {
            let t = trace_product(ei, ej).re;
            if i == j {
                diag += 1.0 - t;
            } else {
                cross += t;
            }
        }
    }
    diag * diag / n + cross * cross / (n * n - n)
}

/// Value of the bound at the SIC point, obtained by substituting
/// tr E_i² = 1/d² and tr E_iE_j = 1/(d²(d+1)) into the bound expression.
pub fn sic_frobenius_bound(d: usize) -> f64 {
    let df = d as f64;
    let d2 = df * df;
    let m = 1.0 / d2;
    let n = 1.0 / (d2 * (df + 1.0));
    let diag_sum = d2 * (1.0 - m);
    let cross_sum = (d2 * d2 - d2) * n;
    diag_sum * diag_sum / d2 + cross_sum * cross_sum / (d2 * d2 - d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// tr(ab) by explicit loops over entries, independent of linalg helpers.
    fn direct_trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
        let d = a.nrows();
        let mut acc = Complex64::ZERO;
        for r in 0..d {
            for s in 0..d {
                acc += a[(r, s)] * b[(s, r)];
            }
        }
        acc
    }

    #[test]
    fn builtin_d2_first_projector_matches_pauli_expression() {
        let sic = builtin_sic(2).unwrap();
        let s3 = 3.0_f64.sqrt();
        // Hand-evaluated entries of (1/2)(I + (σx+σy+σz)/√3).
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[
                c(0.5 * (1.0 + 1.0 / s3), 0.0),
                c(0.5 / s3, -0.5 / s3),
                c(0.5 / s3, 0.5 / s3),
                c(0.5 * (1.0 - 1.0 / s3), 0.0),
            ],
        );
        assert!(max_abs_diff(sic.projector(0), &expected) < 1e-15);
    }

    #[test]
    fn builtin_d2_cross_overlap_is_one_third() {
        let sic = builtin_sic(2).unwrap();
        let ov = direct_trace_product(sic.projector(0), sic.projector(1));
        assert_relative_eq!(ov.re, 1.0 / 3.0, epsilon = 1e-15);
        assert!(ov.im.abs() < 1e-15);
    }

    #[test]
    fn builtin_d2_resolves_identity() {
        let sic = builtin_sic(2).unwrap();
        let sum = sic.projectors().iter().sum::<CMatrix>();
        assert!(max_abs_diff(&sum.unscale(2.0), &identity(2)) < 1e-15);
    }

    #[test]
    fn builtin_d3_first_vector_and_overlap() {
        let sic = builtin_sic(3).unwrap();
        let r2 = 2.0_f64.sqrt();
        let psi1 = CVector::from_vec(vec![c(0., 0.), c(1. / r2, 0.), c(-1. / r2, 0.)]);
        assert!(max_abs_diff(sic.projector(0), &outer(&psi1)) < 1e-15);
        // |⟨ψ_1|ψ_2⟩|² = tr(Π_1Π_2) = 1/4.
        let ov = direct_trace_product(sic.projector(0), sic.projector(1));
        assert_relative_eq!(ov.re, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn builtin_unsupported_dimension_names_supported_set() {
        let err = builtin_sic(4).unwrap_err();
        assert_eq!(err, SicError::UnsupportedBuiltin { d: 4 });
        assert!(err.to_string().contains("{2, 3}"));
    }

    #[test]
    fn wh_identity_at_zero_indices() {
        let m = wh_displacement(2, 0, 0).unwrap();
        assert!(max_abs_diff(&m, &identity(2)) < 1e-16);
    }

    #[test]
    fn wh_shift_is_pauli_x() {
        let m = wh_displacement(2, 1, 0).unwrap();
        assert!(max_abs_diff(&m, &pauli_x()) < 1e-16);
    }

    #[test]
    fn wh_d3_xz_matches_direct_product() {
        // Build X and Z explicitly and multiply; the displacement must agree.
        let x = wh_displacement(3, 1, 0).unwrap();
        let z = wh_displacement(3, 0, 1).unwrap();
        let xz = wh_displacement(3, 1, 1).unwrap();
        assert!(max_abs_diff(&xz, &(&x * &z)) < 1e-15);
        assert!(crate::linalg::unitarity_residual(&xz) < 1e-14);
    }

    #[test]
    fn wh_rejects_out_of_range_indices() {
        assert!(wh_displacement(3, 3, 0).is_err());
        assert!(wh_displacement(3, 0, 5).is_err());
        assert!(wh_displacement(1, 0, 0).is_err());
    }

    /// The d = 2 fiducial with Bloch vector (1,1,1)/√3.
    fn bloch_fiducial() -> Fiducial {
        let ct = ((1.0 + 1.0 / 3.0_f64.sqrt()) / 2.0).sqrt();
        let st = ((1.0 - 1.0 / 3.0_f64.sqrt()) / 2.0).sqrt();
        let phase = Complex64::from_polar(1.0, PI / 4.0);
        Fiducial::new(vec![c(ct, 0.0), phase * st]).unwrap()
    }

    #[test]
    fn orbit_of_bloch_fiducial_reproduces_builtin_projectors() {
        let orbit = fiducial_orbit(&bloch_fiducial());
        let builtin = builtin_sic(2).unwrap();
        // Projector sets must match as sets (orbit order differs from the
        // paper's listing); match each orbit element to a distinct builtin one.
        let mut used = [false; 4];
        for p in orbit.projectors() {
            let mut matched = false;
            for (k, q) in builtin.projectors().iter().enumerate() {
                if !used[k] && max_abs_diff(p, q) < 1e-12 {
                    used[k] = true;
                    matched = true;
                    break;
                }
            }
            assert!(matched, "orbit element without a builtin partner");
        }
        assert!(used.iter().all(|u| *u));
    }

    #[test]
    fn orbit_elements_have_unit_trace() {
        let f = Fiducial::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        for p in fiducial_orbit(&f).projectors() {
            assert_relative_eq!(p.trace().re, 1.0, epsilon = 1e-12);
            assert!(p.trace().im.abs() < 1e-12);
        }
    }

    #[test]
    fn orbit_sums_to_d_times_identity() {
        // Direct summation over the orbit of an arbitrary unit vector.
        let n = (0.2_f64 * 0.2 + 0.3 * 0.3 + 0.86 * 0.86).sqrt();
        let f = Fiducial::new(vec![
            c(0.2 / n, 0.0),
            c(0.0, 0.3 / n),
            c(0.86 / n, 0.0),
        ])
        .unwrap();
        let orbit = fiducial_orbit(&f);
        let sum = orbit.projectors().iter().sum::<CMatrix>();
        assert!(max_abs_diff(&sum, &identity(3).scale(3.0)) < 1e-10);
    }

    #[test]
    fn orbit_has_d_squared_elements() {
        for d in 2..=5 {
            let mut amps = vec![Complex64::ZERO; d];
            amps[0] = Complex64::ONE;
            let f = Fiducial::new(amps).unwrap();
            assert_eq!(fiducial_orbit(&f).len(), d * d);
        }
    }

    #[test]
    fn verify_builtin_d2_passes_tightly() {
        let report = verify_sic(&builtin_sic(2).unwrap(), tol::VERIFY);
        assert!(report.pass);
        assert!(report.max_overlap_deviation < 1e-12);
    }

    #[test]
    fn verify_builtin_d3_passes() {
        let report = verify_sic(&builtin_sic(3).unwrap(), tol::VERIFY);
        assert!(report.pass);
        assert!(report.max_overlap_deviation < 1e-12);
    }

    #[test]
    fn verify_fails_for_generic_vector_orbit() {
        // A fixed non-fiducial unit vector in d = 4.
        let raw = [c(0.9, 0.1), c(0.2, -0.3), c(0.1, 0.0), c(0.05, 0.2)];
        let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let f = Fiducial::new(raw.iter().map(|z| z / n).collect()).unwrap();
        let report = verify_sic(&fiducial_orbit(&f), tol::VERIFY);
        assert!(!report.pass);
        assert!(report.max_overlap_deviation > 1e-3);
    }

    #[test]
    fn from_projectors_rejects_wrong_count() {
        let err = SicSet::from_projectors(2, vec![identity(2); 3]).unwrap_err();
        assert!(matches!(err, SicError::DimensionMismatch { .. }));
    }

    #[test]
    fn frobenius_of_builtin_d2_matches_analytic_bound() {
        let sic = builtin_sic(2).unwrap();
        let f = frobenius_objective(&sic.effects());
        // Bound evaluated at m = 1/4, n = 1/12 is 7/3.
        assert_relative_eq!(sic_frobenius_bound(2), 7.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(f, 7.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(f, frobenius_lower_bound(&sic.effects()), epsilon = 1e-12);
    }

    #[test]
    fn frobenius_of_flat_effects_exceeds_sic_value() {
        // Four copies of I/4 in d = 2: tr E² = 1/8 for every pair, so
        // F = 4(7/8)² + 12(1/8)² = 13/4 by direct evaluation.
        let flat = vec![identity(2).scale(0.25); 4];
        let f = frobenius_objective(&flat);
        assert_relative_eq!(f, 3.25, epsilon = 1e-14);
        assert!(f > sic_frobenius_bound(2));
    }

    #[test]
    fn frobenius_handles_zero_padded_projective_measurement() {
        let p0 = outer(&CVector::from_vec(vec![Complex64::ONE, Complex64::ZERO]));
        let p1 = outer(&CVector::from_vec(vec![Complex64::ZERO, Complex64::ONE]));
        let zero = CMatrix::zeros(2, 2);
        let f = frobenius_objective(&[p0, p1, zero.clone(), zero]);
        // Two unit effects contribute 0, two zero effects contribute 1 each.
        assert_relative_eq!(f, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn effect_gram_row_sums_and_rank() {
        for d in [2usize, 3] {
            let sic = builtin_sic(d).unwrap();
            let effects = sic.effects();
            let n = effects.len();
            let gram = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| {
                direct_trace_product(&effects[i], &effects[j]).re
            });
            // Σ_i tr(E_iE_j) = tr E_j = 1/d.
            for j in 0..n {
                let col_sum: f64 = (0..n).map(|i| gram[(i, j)]).sum();
                assert_relative_eq!(col_sum, 1.0 / d as f64, epsilon = 1e-10);
            }
            // Full rank: smallest singular value of the symmetric Gram is its
            // smallest absolute eigenvalue.
            let ev = gram.symmetric_eigenvalues();
            let min = ev.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = ev.iter().cloned().fold(0.0_f64, f64::max);
            assert!(min.abs() > 1e-10 * max);
        }
    }

    #[test]
    fn fiducial_rejects_unnormalized_input() {
        let err = Fiducial::new(vec![c(1.0, 0.0), c(0.5, 0.0)]).unwrap_err();
        assert!(matches!(err, SicError::NotNormalized { .. }));
    }

    #[test]
    fn fiducial_canonicalizes_global_phase() {
        let phase = Complex64::from_polar(1.0, 1.234);
        let a = phase * c(0.6, 0.0);
        let b = phase * c(0.0, 0.8);
        let f = Fiducial::new(vec![a, b]).unwrap();
        let first = f.amplitudes()[0];
        assert!(first.im.abs() < 1e-15);
        assert!(first.re > 0.0);
    }
}
