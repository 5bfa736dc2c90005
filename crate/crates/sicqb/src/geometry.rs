//! Geometry of the valid-state region inside the probability simplex.
//!
//! In the SIC representation the pure states live on the sphere
//! Σp(i)² = 2/(d(d+1)), centered distributions have radius²
//! (d-1)/(d²(d+1)), and the valid region touches the simplex boundary in
//! controlled ways: pairwise inner products are pinched between
//! 1/(d(d+1)) and 2/(d(d+1)), at most d(d-1)/2 components of a valid state
//! can vanish, and the sphere pokes through n-flats of the boundary exactly
//! when n < d(d-1)/2. This module turns each of those statements into a
//! checkable report.

use crate::error::{Result, SicError};
use crate::sic::SicSet;
use crate::state::{state_to_probs, DensityMatrix, ProbVector};
use crate::tol;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

/// One named comparison; `pass` means |expected - observed| stayed below the
/// tolerance the producing operation used.
#[derive(Clone, Debug, Serialize)]
pub struct GeometryCheck {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub pass: bool,
}

/// A bundle of checks from one geometric probe.
#[derive(Clone, Debug, Serialize)]
pub struct GeometryReport {
    pub d: usize,
    pub checks: Vec<GeometryCheck>,
}

impl GeometryReport {
    fn new(d: usize) -> Self {
        Self { d, checks: Vec::new() }
    }

    fn push(&mut self, name: &str, expected: f64, observed: f64, tolerance: f64) {
        self.checks.push(GeometryCheck {
            name: name.to_string(),
            expected,
            observed,
            pass: (expected - observed).abs() < tolerance,
        });
    }

    /// All checks passed.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check_length(p: &ProbVector, d: usize, what: &'static str) -> Result<()> {
    if p.len() != d * d {
        return Err(SicError::DimensionMismatch {
            what,
            expected: d * d,
            got: p.len(),
        });
    }
    Ok(())
}

/// Squared norm of a probability vector.
fn sum_sq(p: &ProbVector) -> f64 {
    p.iter().map(|x| x * x).sum()
}

/// The distribution a SIC assigns to its own k-th element (k is 1-based):
/// 1/d in slot k and 1/(d(d+1)) everywhere else.
pub fn basis_distribution(d: usize, k: usize) -> Result<ProbVector> {
    if d < 2 {
        return Err(SicError::DimensionTooSmall { d });
    }
    let n = d * d;
    if k < 1 || k > n {
        return Err(SicError::IndexOutOfRange { index: k, len: n });
    }
    let mut p = vec![1.0 / (d as f64 * (d as f64 + 1.0)); n];
    p[k - 1] = 1.0 / d as f64;
    ProbVector::new(p)
}

/// Squared radius of the pure-state sphere around the uniform center:
/// (d-1)/(d²(d+1)).
pub fn sphere_radius_sq(d: usize) -> f64 {
    let df = d as f64;
    (df - 1.0) / (df * df * (df + 1.0))
}

/// Tests whether p sits on the pure-state sphere: Σp(i)² against 2/(d(d+1))
/// and the centered squared norm against the sphere radius².
pub fn sphere_check(p: &ProbVector, d: usize) -> Result<GeometryReport> {
    check_length(p, d, "probability length")?;
    let df = d as f64;
    let n = d * d;
    let mut report = GeometryReport::new(d);
    report.push(
        "sum-of-squares",
        2.0 / (df * (df + 1.0)),
        sum_sq(p),
        tol::GEOM,
    );
    let center = 1.0 / n as f64;
    let centered: f64 = p.iter().map(|x| (x - center) * (x - center)).sum();
    report.push("centered-radius-squared", sphere_radius_sq(d), centered, tol::GEOM);
    Ok(report)
}

/// Bounds on ⟨p|s⟩ for two pure-state distributions:
/// 1/(d(d+1)) ≤ ⟨p|s⟩ ≤ 2/(d(d+1)). Each margin (distance from the bound,
/// negative if violated) is reported; a check passes when its margin is not
/// below -tolerance.
pub fn inner_bound_check(p: &ProbVector, s: &ProbVector, d: usize) -> Result<GeometryReport> {
    check_length(p, d, "left length")?;
    check_length(s, d, "right length")?;
    let df = d as f64;
    let ip: f64 = p.iter().zip(s.iter()).map(|(a, b)| a * b).sum();
    let lower = 1.0 / (df * (df + 1.0));
    let upper = 2.0 / (df * (df + 1.0));
    let mut report = GeometryReport::new(d);
    let lower_margin = ip - lower;
    let upper_margin = upper - ip;
    report.push("lower-margin", lower_margin.max(0.0), lower_margin, tol::GEOM);
    report.push("upper-margin", upper_margin.max(0.0), upper_margin, tol::GEOM);
    Ok(report)
}

/// Distance comparison between the pure-state sphere and an n-flat of the
/// simplex boundary.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NflatResult {
    pub d: usize,
    pub n: usize,
    /// Minimum squared distance n/(d²(d²-n)) from the uniform center to a
    /// boundary flat where n components vanish.
    pub d2_min: f64,
    /// Squared sphere radius (d-1)/(d²(d+1)).
    pub sphere_r2: f64,
    /// Whether the sphere reaches past the flat; equivalent to n < d(d-1)/2,
    /// decided in integers to avoid ties in floating point.
    pub pokes_through: bool,
}

/// Evaluates the flat-distance formula and the poke-through verdict for
/// 0 ≤ n < d².
pub fn nflat_min_distance(d: usize, n: usize) -> Result<NflatResult> {
    if d < 2 {
        return Err(SicError::DimensionTooSmall { d });
    }
    let total = d * d;
    if n >= total {
        return Err(SicError::IndexOutOfRange {
            index: n,
            len: total - 1,
        });
    }
    let d2_min = n as f64 / ((total * (total - n)) as f64);
    Ok(NflatResult {
        d,
        n,
        d2_min,
        sphere_r2: sphere_radius_sq(d),
        pokes_through: 2 * n < d * (d - 1),
    })
}

/// Zero-component count of a state against the bound d(d-1)/2.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZerosAudit {
    pub count: usize,
    pub bound: usize,
    pub pass: bool,
}

/// Counts components below `zero_tol` and compares with the bound; valid
/// states never exceed it.
pub fn zeros_audit(p: &ProbVector, d: usize, zero_tol: f64) -> Result<ZerosAudit> {
    check_length(p, d, "probability length")?;
    let count = p.iter().filter(|x| **x < zero_tol).count();
    let bound = d * (d - 1) / 2;
    Ok(ZerosAudit {
        count,
        bound,
        pass: count <= bound,
    })
}

/// Spectrum of the candidate Gram matrix of n mutually maximally distant
/// states.
#[derive(Clone, Debug, Serialize)]
pub struct MaxDistantGram {
    pub d: usize,
    pub n: usize,
    /// Numerical eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Closed-form odd eigenvalue (d-n)/(d²(d+1)), multiplicity 1.
    pub lambda0: f64,
    /// Closed-form repeated eigenvalue 1/(d(d+1)), multiplicity n-1.
    pub lambda: f64,
    pub psd: bool,
}

/// Builds the n×n matrix with diagonal (d-1)/(d²(d+1)) and off-diagonal
/// -1/(d²(d+1)) that a set of n mutually maximally distant centered states
/// would have as its Gram matrix, and reports whether it is PSD. It is
/// exactly for n ≤ d, which is why no more than d such states exist.
pub fn max_distant_gram(d: usize, n: usize) -> Result<MaxDistantGram> {
    if d < 2 {
        return Err(SicError::DimensionTooSmall { d });
    }
    if n < 1 {
        return Err(SicError::DimensionMismatch {
            what: "set size",
            expected: 1,
            got: 0,
        });
    }
    let df = d as f64;
    let denom = df * df * (df + 1.0);
    let a = (df - 1.0) / denom;
    let b = -1.0 / denom;
    let gram = DMatrix::from_fn(n, n, |i, j| if i == j { a } else { b });
    let mut eigenvalues: Vec<f64> = gram.symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let psd = eigenvalues.first().map(|e| *e >= -tol::EXACT).unwrap_or(true);
    Ok(MaxDistantGram {
        d,
        n,
        eigenvalues,
        lambda0: (df - n as f64) / denom,
        lambda: 1.0 / (df * (df + 1.0)),
        psd,
    })
}

/// The d distributions of the computational-basis states: a concrete
/// mutually maximally distant set, every pair at the minimal inner product
/// (δ_kl + 1)/(d(d+1)).
pub fn build_max_distant_set(sic: &SicSet) -> Result<Vec<ProbVector>> {
    let d = sic.d();
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let mut m = crate::linalg::CMatrix::zeros(d, d);
        m[(k, k)] = Complex64::ONE;
        let rho = DensityMatrix::new(m)?;
        out.push(state_to_probs(&rho, sic)?);
    }
    Ok(out)
}

/// Order-2 entropies of a distribution.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Order2Entropies {
    /// -ln Σp(i)².
    pub renyi2: f64,
    /// 2(1 - Σp(i)²).
    pub daroczy2: f64,
}

/// Both order-2 entropies; constant on pure states because Σp² is.
pub fn order2_entropies(p: &ProbVector) -> Order2Entropies {
    let s = sum_sq(p);
    Order2Entropies {
        renyi2: -s.ln(),
        daroczy2: 2.0 * (1.0 - s),
    }
}
