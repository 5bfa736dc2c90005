//! Recovering the quantum constants from probabilistic assumptions, in
//! exact arithmetic.
//!
//! Generalize the total-probability rule to q(j) = α Σ_i p(i)r(j|i) - β
//! Σ_i r(j|i) for an unknown reference measurement with n outcomes and
//! ground measurements with m0 outcomes reaching certainty. Normalization
//! and the certainty requirement force
//!
//! ```text
//! n·β = α - 1        (m0/n)·α - β = 1
//! ```
//!
//! and demanding a dimension-independent angle between the certainty priors
//! forces cosθ = q̄/(q̄+2) for a nonnegative integer q̄. Solving the system
//! for each (q̄, m0) gives a discrete family of candidate theories; q̄ = 2
//! returns n = m0², α = m0+1, β = 1/m0, the quantum case, while q̄ = 0 is
//! classical probability and q̄ = 1 matches real Hilbert space. Everything
//! here is computed with arbitrary-precision rationals so integrality and
//! equality are decided exactly, not within a tolerance.

use crate::born::ConditionalMatrix;
use crate::error::{Result, SicError};
use crate::linalg::{identity, max_abs, trace_product_re, CMatrix};
use crate::sic::SicSet;
use crate::state::ProbVector;
use crate::tol;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Exact solution of the generalized-urgleichung constraints for one
/// (q̄, m0) cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UrgleichungParams {
    pub qbar: u64,
    /// Outcomes of the certainty-achieving ground measurements.
    pub m0: u64,
    /// Outcomes of the reference measurement, m0(q̄(m0-1)+2)/2.
    pub n: u64,
    /// (n-1)/(m0-1).
    pub alpha: BigRational,
    /// (n-m0)/(n(m0-1)).
    pub beta: BigRational,
}

impl UrgleichungParams {
    /// The universal angle q̄/(q̄+2), equal to
    /// (n-m0)/((m0-1)² + n - 1) for consistent parameters.
    pub fn cos_theta(&self) -> BigRational {
        ratio(big(self.qbar), big(self.qbar + 2))
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64().expect("small rational")
    }

    pub fn beta_f64(&self) -> f64 {
        self.beta.to_f64().expect("small rational")
    }
}

/// Solves the three constraints exactly. n = m0(q̄(m0-1)+2)/2 is an integer
/// for every input by a parity argument (one of the two factors is always
/// even); the inconsistent-pair error is kept as a defensive check on the
/// exact arithmetic rather than a reachable outcome.
pub fn solve_constants(qbar: u64, m0: u64) -> Result<UrgleichungParams> {
    if m0 < 2 {
        return Err(SicError::M0TooSmall { m0 });
    }
    let product = big(m0) * (big(qbar) * big(m0 - 1) + big(2));
    let two = big(2);
    if !(&product % &two).is_zero() {
        return Err(SicError::InconsistentPair { qbar, m0 });
    }
    let n = (&product / &two)
        .to_u64()
        .ok_or(SicError::InconsistentPair { qbar, m0 })?;
    if n < m0 {
        return Err(SicError::InconsistentPair { qbar, m0 });
    }
    let alpha = ratio(big(n - 1), big(m0 - 1));
    let beta = ratio(big(n - m0), big(n) * big(m0 - 1));
    let params = UrgleichungParams {
        qbar,
        m0,
        n,
        alpha,
        beta,
    };

    // Defensive exact verification of all three defining constraints.
    let n_rat = BigRational::from_integer(big(n));
    let m0_rat = BigRational::from_integer(big(m0));
    let norm_ok = &n_rat * &params.beta == &params.alpha - BigRational::one();
    let certainty_ok =
        (&m0_rat / &n_rat) * &params.alpha - &params.beta == BigRational::one();
    let m0_minus_1 = big(m0 - 1);
    let angle = ratio(big(n - m0), &m0_minus_1 * &m0_minus_1 + big(n - 1));
    let angle_ok = angle == params.cos_theta();
    if !(norm_ok && certainty_ok && angle_ok) {
        return Err(SicError::InconsistentPair { qbar, m0 });
    }
    Ok(params)
}

/// q(j) = α Σ_i p(i)r(j|i) - β Σ_i r(j|i). The output sums to 1 whenever
/// nβ = α-1 holds, but individual components may leave [0,1]; interpreting
/// that is the caller's business, so a plain vector is returned.
pub fn general_urgleichung(
    p: &ProbVector,
    r: &ConditionalMatrix,
    params: &UrgleichungParams,
) -> Result<Vec<f64>> {
    let n = params.n as usize;
    if p.len() != n {
        return Err(SicError::DimensionMismatch {
            what: "prior length",
            expected: n,
            got: p.len(),
        });
    }
    if r.n() != n {
        return Err(SicError::DimensionMismatch {
            what: "conditional columns",
            expected: n,
            got: r.n(),
        });
    }
    let alpha = params.alpha_f64();
    let beta = params.beta_f64();
    Ok((0..r.m())
        .map(|j| {
            let mix: f64 = (0..n).map(|i| p[i] * r.r(j, i)).sum();
            alpha * mix - beta * r.row_sums()[j]
        })
        .collect())
}

/// One row of the universal-angle family.
#[derive(Clone, Debug, Serialize)]
pub struct AngleRow {
    pub qbar: u64,
    pub m0: u64,
    pub n: u64,
    /// Rendered exactly, e.g. "5/2".
    pub alpha: String,
    pub beta: String,
    pub cos_theta: String,
    /// q̄ = 1 rows reproduce the overlap structure of real Hilbert space.
    pub real_hilbert: bool,
}

/// Enumerates every consistent (q̄, m0) cell with q̄ ≤ qbar_max and
/// 2 ≤ m0 ≤ m0_max. q̄ beyond 2 is listed without claiming an
/// interpretation.
pub fn universal_angle_table(qbar_max: u64, m0_max: u64) -> Result<Vec<AngleRow>> {
    if qbar_max < 2 || m0_max < 2 {
        return Err(SicError::BadTableBounds { qbar_max, m0_max });
    }
    let mut rows = Vec::new();
    for qbar in 0..=qbar_max {
        for m0 in 2..=m0_max {
            let params = solve_constants(qbar, m0)?;
            rows.push(AngleRow {
                qbar,
                m0,
                n: params.n,
                alpha: params.alpha.to_string(),
                beta: params.beta.to_string(),
                cos_theta: params.cos_theta().to_string(),
                real_hilbert: qbar == 1,
            });
        }
    }
    Ok(rows)
}

/// Numerical outcome of the certainty construction for an actual SIC and
/// orthonormal basis.
#[derive(Clone, Debug, Serialize)]
pub struct CertaintyReport {
    pub d: usize,
    /// Worst deviation of ⟨p_j|p_k⟩ from (1/α)((m0/n)δ_jk + β).
    pub max_angle_residual: f64,
    /// Worst deviation of the urgleichung output from δ_jk when the prior
    /// is the certainty state p_k and the ground measurement is the basis.
    pub max_certainty_residual: f64,
    /// Angle between two distinct certainty priors,
    /// ⟨p_j|p_k⟩/(‖p_j‖‖p_k‖); the universal constant 1/2.
    pub cos_theta_measured: f64,
    pub pass: bool,
}

/// Builds the certainty priors p_k(i) = tr(Π_iP_k)/d for an orthonormal
/// projector basis and verifies the angle matrix, outcome certainty, and
/// the universal angle, all at 1e-12.
pub fn certainty_check(sic: &SicSet, basis: &[CMatrix]) -> Result<CertaintyReport> {
    let d = sic.d();
    if basis.len() != d {
        return Err(SicError::DimensionMismatch {
            what: "basis size",
            expected: d,
            got: basis.len(),
        });
    }
    let mut ortho = 0.0_f64;
    let mut sum = CMatrix::zeros(d, d);
    for (j, pj) in basis.iter().enumerate() {
        if pj.nrows() != d || pj.ncols() != d {
            return Err(SicError::DimensionMismatch {
                what: "projector size",
                expected: d,
                got: pj.nrows().max(pj.ncols()),
            });
        }
        for (k, pk) in basis.iter().enumerate() {
            let target = if j == k { 1.0 } else { 0.0 };
            ortho = ortho.max((trace_product_re(pj, pk) - target).abs());
        }
        sum += pj;
    }
    ortho = ortho.max(max_abs(&(sum - identity(d))));
    if ortho > tol::UNITARY {
        return Err(SicError::NotOrthonormal { residual: ortho });
    }

    let df = d as f64;
    let n = sic.len();
    // Certainty priors and conditionals r(k|i) = tr(Π_iP_k).
    let mut priors: Vec<Vec<f64>> = Vec::with_capacity(d);
    for pk in basis {
        priors.push(
            sic.projectors()
                .iter()
                .map(|pi| trace_product_re(pi, pk) / df)
                .collect(),
        );
    }

    // (i) Angle matrix ⟨p_j|p_k⟩ = (1/α)((m0/n)δ_jk + β), with the quantum
    // constants α = d+1, β = 1/d, m0 = d.
    let mut max_angle = 0.0_f64;
    for j in 0..d {
        for k in 0..d {
            let ip: f64 = (0..n).map(|i| priors[j][i] * priors[k][i]).sum();
            let delta = if j == k { 1.0 } else { 0.0 };
            let expected = (delta / df + 1.0 / df) / (df + 1.0);
            max_angle = max_angle.max((ip - expected).abs());
        }
    }

    // (ii) With prior p_k and the basis as ground measurement, the
    // urgleichung must announce outcome k with certainty.
    let mut max_certainty = 0.0_f64;
    for (k, prior) in priors.iter().enumerate() {
        for (j, pj) in basis.iter().enumerate() {
            let mut mix = 0.0;
            let mut row = 0.0;
            for (i, pi) in sic.projectors().iter().enumerate() {
                let r = trace_product_re(pi, pj);
                mix += prior[i] * r;
                row += r;
            }
            let q = (df + 1.0) * mix - row / df;
            let delta = if j == k { 1.0 } else { 0.0 };
            max_certainty = max_certainty.max((q - delta).abs());
        }
    }

    // (iii) The universal angle between distinct priors.
    let ip01: f64 = (0..n).map(|i| priors[0][i] * priors[1][i]).sum();
    let n0: f64 = (0..n).map(|i| priors[0][i] * priors[0][i]).sum::<f64>().sqrt();
    let n1: f64 = (0..n).map(|i| priors[1][i] * priors[1][i]).sum::<f64>().sqrt();
    let cos_theta_measured = ip01 / (n0 * n1);
    let mut cos_dev = (cos_theta_measured - 0.5).abs();
    for j in 0..d {
        for k in 0..d {
            if j == k {
                continue;
            }
            let ip: f64 = (0..n).map(|i| priors[j][i] * priors[k][i]).sum();
            let nj: f64 = (0..n).map(|i| priors[j][i] * priors[j][i]).sum::<f64>().sqrt();
            let nk: f64 = (0..n).map(|i| priors[k][i] * priors[k][i]).sum::<f64>().sqrt();
            cos_dev = cos_dev.max((ip / (nj * nk) - 0.5).abs());
        }
    }

    Ok(CertaintyReport {
        d,
        max_angle_residual: max_angle,
        max_certainty_residual: max_certainty,
        cos_theta_measured,
        pass: max_angle < tol::EXACT && max_certainty < tol::EXACT && cos_dev < tol::EXACT,
    })
}

/// Convenience: the computational-basis projectors used by the certainty
/// examples.
pub fn computational_projectors(d: usize) -> Vec<CMatrix> {
    (0..d)
        .map(|k| {
            let mut m = CMatrix::zeros(d, d);
            m[(k, k)] = num_complex::Complex64::ONE;
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::born::{classical_ltp, conditional_matrix, urgleichung, Povm};
    use crate::random::{random_povm, rng_from_seed, wishart_matrix};
    use crate::sic::builtin_sic;
    use crate::state::{state_to_probs, DensityMatrix};
    use nalgebra::DMatrix;
    use num_traits::Signed;
    use rand::Rng;

    fn rat64(num: i64, den: i64) -> BigRational {
        ratio(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn quantum_cell_for_qubits() {
        let p = solve_constants(2, 2).unwrap();
        assert_eq!(p.n, 4);
        assert_eq!(p.alpha, rat64(3, 1));
        assert_eq!(p.beta, rat64(1, 2));
        assert_eq!(p.cos_theta(), rat64(1, 2));
    }

    #[test]
    fn classical_cell_has_unit_alpha_zero_beta() {
        let p = solve_constants(0, 3).unwrap();
        assert_eq!(p.n, 3);
        assert_eq!(p.alpha, rat64(1, 1));
        assert_eq!(p.beta, rat64(0, 1));
        assert_eq!(p.cos_theta(), rat64(0, 1));
    }

    #[test]
    fn real_hilbert_cell_at_m0_three() {
        let p = solve_constants(1, 3).unwrap();
        assert_eq!(p.n, 6);
        assert_eq!(p.alpha, rat64(5, 2));
        assert_eq!(p.beta, rat64(1, 4));
        assert_eq!(p.cos_theta(), rat64(1, 3));
    }

    #[test]
    fn quantum_family_closed_form_over_a_range() {
        for d in 2..=20u64 {
            let p = solve_constants(2, d).unwrap();
            assert_eq!(p.n, d * d);
            assert_eq!(p.alpha, BigRational::from_integer(big(d + 1)));
            assert_eq!(p.beta, ratio(BigInt::one(), big(d)));
        }
    }

    #[test]
    fn invariants_hold_exactly_across_the_grid() {
        for qbar in 0..=6u64 {
            for m0 in 2..=8u64 {
                let p = solve_constants(qbar, m0).unwrap();
                let n = BigRational::from_integer(big(p.n));
                let m0r = BigRational::from_integer(big(p.m0));
                assert_eq!(&n * &p.beta, &p.alpha - BigRational::one());
                assert_eq!((&m0r / &n) * &p.alpha - &p.beta, BigRational::one());
                // The angle in terms of (n, m0) agrees with q̄/(q̄+2).
                let denom = (&m0r - BigRational::one()) * (&m0r - BigRational::one())
                    + &n
                    - BigRational::one();
                let angle = (&n - &m0r) / denom;
                assert_eq!(angle, p.cos_theta());
                assert!(!p.beta.is_negative());
            }
        }
    }

    #[test]
    fn rational_rendering_used_by_the_cli() {
        let p = solve_constants(2, 5).unwrap();
        assert_eq!(p.n, 25);
        assert_eq!(p.alpha.to_string(), "6");
        assert_eq!(p.beta.to_string(), "1/5");
    }

    #[test]
    fn small_m0_is_rejected() {
        assert!(matches!(
            solve_constants(2, 1),
            Err(SicError::M0TooSmall { m0: 1 })
        ));
        assert!(matches!(
            solve_constants(0, 0),
            Err(SicError::M0TooSmall { m0: 0 })
        ));
    }

    #[test]
    fn recovered_constants_reproduce_the_quantum_rule() {
        let d = 2usize;
        let sic = builtin_sic(d).unwrap();
        let params = solve_constants(2, d as u64).unwrap();
        let mut rng = rng_from_seed(61);
        for _ in 0..5 {
            let rho = DensityMatrix::new(wishart_matrix(d, &mut rng)).unwrap();
            let ground = Povm::new(d, random_povm(d, 4, &mut rng)).unwrap();
            let r = conditional_matrix(&sic, &ground).unwrap();
            let p = state_to_probs(&rho, &sic).unwrap();
            let general = general_urgleichung(&p, &r, &params).unwrap();
            let quantum = urgleichung(&p, &r, d).unwrap();
            for j in 0..r.m() {
                assert!((general[j] - quantum[j]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn classical_constants_reproduce_total_probability() {
        let sic = builtin_sic(2).unwrap();
        let params = solve_constants(0, 4).unwrap();
        let r = crate::born::sky_conditional(&sic);
        let rho = DensityMatrix::new(wishart_matrix(2, &mut rng_from_seed(62))).unwrap();
        let p = state_to_probs(&rho, &sic).unwrap();
        let general = general_urgleichung(&p, &r, &params).unwrap();
        let classical = classical_ltp(&p, &r).unwrap();
        for j in 0..4 {
            assert!((general[j] - classical[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn output_sums_to_one_for_any_consistent_cell() {
        let params = solve_constants(1, 5).unwrap();
        let n = params.n as usize;
        let mut rng = rng_from_seed(63);
        // Random stochastic matrix and random prior of the right size.
        let mut r = DMatrix::zeros(6, n);
        for i in 0..n {
            let col: Vec<f64> = (0..6).map(|_| rng.random::<f64>() + 1e-3).collect();
            let s: f64 = col.iter().sum();
            for j in 0..6 {
                r[(j, i)] = col[j] / s;
            }
        }
        let r = ConditionalMatrix::new(r).unwrap();
        let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let p = ProbVector::new(raw.into_iter().map(|x| x / total).collect()).unwrap();
        let q = general_urgleichung(&p, &r, &params).unwrap();
        let sum: f64 = q.iter().sum();
        assert!((sum - 1.0).abs() < 1e-13);
    }

    #[test]
    fn table_contains_the_quantum_and_real_rows() {
        let rows = universal_angle_table(3, 6).unwrap();
        for d in 2..=6u64 {
            let row = rows
                .iter()
                .find(|r| r.qbar == 2 && r.m0 == d)
                .expect("quantum row present");
            assert_eq!(row.n, d * d);
            assert_eq!(row.alpha, (d + 1).to_string());
            assert!(!row.real_hilbert);
        }
        let real = rows
            .iter()
            .find(|r| r.qbar == 1 && r.m0 == 4)
            .expect("real-Hilbert row present");
        assert_eq!(real.n, 10);
        assert!(real.real_hilbert);
    }

    #[test]
    fn table_angles_stay_inside_the_unit_interval() {
        let rows = universal_angle_table(5, 5).unwrap();
        for row in &rows {
            let params = solve_constants(row.qbar, row.m0).unwrap();
            let c = params.cos_theta().to_f64().unwrap();
            assert!((0.0..1.0).contains(&c), "{row:?}");
        }
        assert!(matches!(
            universal_angle_table(1, 5),
            Err(SicError::BadTableBounds { .. })
        ));
        assert!(matches!(
            universal_angle_table(2, 1),
            Err(SicError::BadTableBounds { .. })
        ));
    }

    #[test]
    fn certainty_holds_for_builtin_dimensions() {
        for d in [2usize, 3] {
            let sic = builtin_sic(d).unwrap();
            let report = certainty_check(&sic, &computational_projectors(d)).unwrap();
            assert!(report.pass, "{report:?}");
            assert!((report.cos_theta_measured - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn certainty_holds_for_a_found_sic_in_d4() {
        let sic = crate::selftest::cached_sic(4, 0).expect("search succeeds in d=4");
        let report = certainty_check(&sic, &computational_projectors(4)).unwrap();
        // A numerically found SIC carries its search residual into the
        // checks; the angle constant still lands at 1/2 far below 1e-6.
        assert!(report.max_angle_residual < 1e-7, "{report:?}");
        assert!(report.max_certainty_residual < 1e-6, "{report:?}");
        assert!((report.cos_theta_measured - 0.5).abs() < 1e-7, "{report:?}");
    }

    #[test]
    fn non_orthonormal_basis_is_rejected() {
        let sic = builtin_sic(2).unwrap();
        let p1 = computational_projectors(2).remove(0);
        assert!(matches!(
            certainty_check(&sic, &[p1.clone(), p1]),
            Err(SicError::NotOrthonormal { .. })
        ));
    }
}
