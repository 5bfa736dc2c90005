//! Probability-vector representation of quantum states.
//!
//! Fix a SIC in dimension d. Measuring its d² effects on a state ρ gives
//! p(i) = tr(ρΠ_i)/d, and this map is invertible:
//!
//! ```text
//! ρ = Σ_i ((d+1)p(i) - 1/d) Π_i
//! ```
//!
//! so a probability vector of length d² carries the full state. Only part of
//! the simplex corresponds to positive semi-definite ρ; [`validate_probs`]
//! decides membership, the triple-product tensors of [`structure_coeffs`]
//! express the pure-state conditions directly on probabilities, and the
//! square-root coefficients of [`sqrt_probs`] parameterize the valid set
//! from inside.

use crate::error::{Result, SicError};
use crate::linalg::{
    hermiticity_residual, min_eigenvalue, outer, principal_sqrt, trace_product_re, CMatrix,
    CVector,
};
use crate::sic::SicSet;
use crate::tol;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

/// A d×d density matrix: Hermitian, unit trace, PSD up to the documented
/// eigenvalue floor.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    d: usize,
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and trace at 1e-12 and the spectrum at the
    /// -1e-10 floor.
    pub fn new(m: CMatrix) -> Result<Self> {
        let d = m.nrows();
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        if m.ncols() != d {
            return Err(SicError::DimensionMismatch {
                what: "matrix shape",
                expected: d,
                got: m.ncols(),
            });
        }
        let herm = hermiticity_residual(&m);
        if herm > tol::EXACT {
            return Err(SicError::NotHermitian { residual: herm });
        }
        let tr = (m.trace() - Complex64::ONE).norm();
        if tr > tol::EXACT {
            return Err(SicError::TraceNotOne { residual: tr });
        }
        let lo = min_eigenvalue(&m);
        if lo < -tol::PSD_FLOOR {
            return Err(SicError::NotPsd { min_eigenvalue: lo });
        }
        Ok(Self { d, m })
    }

    /// |ψ⟩⟨ψ| for a unit vector (renormalized after a 1e-12 norm check).
    pub fn from_pure(psi: &CVector) -> Result<Self> {
        let d = psi.len();
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        let norm = psi.norm();
        if (norm - 1.0).abs() > tol::EXACT {
            return Err(SicError::NotNormalized {
                residual: (norm - 1.0).abs(),
            });
        }
        let unit = psi.unscale(norm);
        Ok(Self {
            d,
            m: outer(&unit),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }
}

/// A point of the probability simplex: nonnegative components summing to 1,
/// both within 1e-12.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVector {
    p: Vec<f64>,
}

impl ProbVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(SicError::DimensionMismatch {
                what: "probability length",
                expected: 1,
                got: 0,
            });
        }
        for (i, &x) in p.iter().enumerate() {
            if !(-tol::EXACT..=1.0 + tol::EXACT).contains(&x) {
                return Err(SicError::ComponentOutOfRange {
                    index: i + 1,
                    value: x,
                });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tol::EXACT {
            return Err(SicError::NotOnSimplex {
                residual: (sum - 1.0).abs(),
            });
        }
        Ok(Self { p })
    }

    /// The flat distribution on n outcomes.
    pub fn uniform(n: usize) -> Self {
        Self {
            p: vec![1.0 / n as f64; n],
        }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn components(&self) -> &[f64] {
        &self.p
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.p.iter()
    }
}

impl std::ops::Index<usize> for ProbVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.p[i]
    }
}

fn check_sic_length(len: usize, sic: &SicSet, what: &'static str) -> Result<()> {
    if len != sic.len() {
        return Err(SicError::DimensionMismatch {
            what,
            expected: sic.len(),
            got: len,
        });
    }
    Ok(())
}

/// SIC outcome probabilities p(i) = tr(ρΠ_i)/d of a state.
pub fn state_to_probs(rho: &DensityMatrix, sic: &SicSet) -> Result<ProbVector> {
    if rho.d() != sic.d() {
        return Err(SicError::DimensionMismatch {
            what: "state dimension",
            expected: sic.d(),
            got: rho.d(),
        });
    }
    let d = sic.d() as f64;
    let p = sic
        .projectors()
        .iter()
        .map(|pi| trace_product_re(rho.matrix(), pi) / d)
        .collect();
    ProbVector::new(p)
}

/// Fast path for pure states: p(i) = ⟨ψ|Π_i|ψ⟩/d without forming |ψ⟩⟨ψ|.
pub fn pure_state_probs(psi: &CVector, sic: &SicSet) -> Result<ProbVector> {
    if psi.len() != sic.d() {
        return Err(SicError::DimensionMismatch {
            what: "state dimension",
            expected: sic.d(),
            got: psi.len(),
        });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > tol::EXACT {
        return Err(SicError::NotNormalized {
            residual: (norm - 1.0).abs(),
        });
    }
    let unit = psi.unscale(norm);
    let d = sic.d() as f64;
    let p = sic
        .projectors()
        .iter()
        .map(|pi| unit.dotc(&(pi * &unit)).re / d)
        .collect();
    ProbVector::new(p)
}

/// Inverse map Σ_i ((d+1)p(i) - 1/d)Π_i. Always Hermitian with unit trace;
/// positivity is not guaranteed and is exactly what [`validate_probs`]
/// decides, so the raw matrix is returned.
pub fn probs_to_state(p: &ProbVector, sic: &SicSet) -> Result<CMatrix> {
    check_sic_length(p.len(), sic, "probability length")?;
    let d = sic.d() as f64;
    let mut rho = CMatrix::zeros(sic.d(), sic.d());
    for (i, pi) in sic.projectors().iter().enumerate() {
        rho += pi.scale((d + 1.0) * p[i] - 1.0 / d);
    }
    Ok(rho)
}

/// Whether a simplex point is an actual quantum state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Validity {
    Valid,
    Invalid { min_eigenvalue: f64 },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Reconstructs the matrix and checks its spectrum: valid means the minimum
/// eigenvalue is ≥ -tolerance.
pub fn validate_probs(p: &ProbVector, sic: &SicSet, tolerance: f64) -> Result<Validity> {
    let rho = probs_to_state(p, sic)?;
    let lo = min_eigenvalue(&rho);
    if lo >= -tolerance {
        Ok(Validity::Valid)
    } else {
        Ok(Validity::Invalid { min_eigenvalue: lo })
    }
}

/// Hilbert-Schmidt inner product tr(ρσ) of the states behind two probability
/// vectors, computed purely on probabilities as d(d+1)⟨p|q⟩ - 1.
pub fn hs_inner_from_probs(p: &ProbVector, q: &ProbVector, d: usize) -> Result<f64> {
    let n = d * d;
    for (len, what) in [(p.len(), "left length"), (q.len(), "right length")] {
        if len != n {
            return Err(SicError::DimensionMismatch {
                what,
                expected: n,
                got: len,
            });
        }
    }
    let dot: f64 = p.iter().zip(q.iter()).map(|(a, b)| a * b).sum();
    Ok((d * (d + 1)) as f64 * dot - 1.0)
}

/// Dense triple-product tensors of a SIC.
///
/// With T_ijk = tr(Π_iΠ_jΠ_k):
/// - `alpha`: α_ijk = (1/d)((d+1)T_ijk - (dδ_ij+1)/(d+1)), the expansion
///   coefficients tying products of elements back to the element basis;
/// - `c`: c_ijk = Re T_ijk, fully symmetric in all three indices.
///
/// Both are stored densely; at the default dimension cap the α tensor is
/// ~48 MB, which is the accepted trade for O(1) lookups.
#[derive(Clone, Debug)]
pub struct StructureCoeffs {
    d: usize,
    n: usize,
    alpha: Vec<Complex64>,
    c: Vec<f64>,
}

impl StructureCoeffs {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of index values per axis, always d².
    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// α_ijk, 0-based indices.
    pub fn alpha(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.alpha[self.idx(i, j, k)]
    }

    /// c_ijk, 0-based indices.
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[self.idx(i, j, k)]
    }

    /// The symmetric matrix (C_k)_ij = c_ijk, 0-based k.
    pub fn c_matrix(&self, k: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.c(i, j, k))
    }
}

/// Builds both tensors from the vector Gram matrix: with S_ij = ⟨ψ_i|ψ_j⟩,
/// T_ijk = S_ij S_jk S_ki, which is independent of the per-vector phases.
pub fn structure_coeffs(sic: &SicSet) -> StructureCoeffs {
    let d = sic.d();
    let n = sic.len();
    let s = sic.overlap_gram();
    let df = d as f64;
    let mut alpha = Vec::with_capacity(n * n * n);
    let mut c = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { df } else { 0.0 };
            let affine = (delta + 1.0) / (df + 1.0);
            for k in 0..n {
                let t = s[(i, j)] * s[(j, k)] * s[(k, i)];
                alpha.push((t.scale(df + 1.0) - Complex64::new(affine, 0.0)).unscale(df));
                c.push(t.re);
            }
        }
    }
    StructureCoeffs { d, n, alpha, c }
}

/// Pure-versus-mixed diagnosis of a valid probability vector.
#[derive(Clone, Debug, Serialize)]
pub struct PurityReport {
    pub d: usize,
    /// Σp(i)² - 2/(d(d+1)); zero exactly on pure states.
    pub r2: f64,
    /// Σ c_ijk p(i)p(j)p(k) - (d+7)/(d+1)³; zero exactly on pure states.
    pub r3: f64,
    /// Worst component residual of the pure-state fixed-point equation
    /// p(k) = ((d+1)²/3d)Σ_ij c_ijk p(i)p(j) - 1/(3d).
    pub max_fixed_point_residual: f64,
    /// Worst residual of the same condition rewritten through the real parts
    /// of the α coefficients; algebraically equivalent, kept as a
    /// sign-convention cross-check.
    pub max_alpha_form_residual: f64,
    /// Both invariants within the requested tolerance.
    pub is_pure: bool,
}

/// Evaluates the quadratic and cubic pure-state invariants. The caller is
/// expected to pass a valid state (see [`validate_probs`]); the quantities
/// are computed either way.
///
/// The quadratic contractions A_k = Σ_ij p(i)p(j)T_ijk for all k come from
/// three Gram-matrix products, (S·diag(p)·S·diag(p)·S)_kk, instead of the d⁶
/// dense sum.
pub fn purity_classify(p: &ProbVector, sic: &SicSet, tolerance: f64) -> Result<PurityReport> {
    check_sic_length(p.len(), sic, "probability length")?;
    let d = sic.d() as f64;
    let n = sic.len();
    let s = sic.overlap_gram();

    let mut se = s.clone();
    for j in 0..n {
        for i in 0..n {
            se[(i, j)] *= p[j];
        }
    }
    let ses = &se * &s;
    let mut sese = ses.clone();
    for j in 0..n {
        for i in 0..n {
            sese[(i, j)] *= p[j];
        }
    }
    let m = &sese * &s;
    let a: Vec<Complex64> = (0..n).map(|k| m[(k, k)]).collect();

    let sum_sq: f64 = p.iter().map(|x| x * x).sum();
    let r2 = sum_sq - 2.0 / (d * (d + 1.0));
    let cubic: f64 = (0..n).map(|k| p[k] * a[k].re).sum();
    let r3 = cubic - (d + 7.0) / (d + 1.0).powi(3);

    let mut max_fp = 0.0_f64;
    let mut max_af = 0.0_f64;
    for k in 0..n {
        let fp = p[k] - (d + 1.0).powi(2) / (3.0 * d) * a[k].re + 1.0 / (3.0 * d);
        max_fp = max_fp.max(fp.abs());
        let g = ((d + 1.0) * a[k].re - (d * sum_sq + 1.0) / (d + 1.0)) / d;
        let af = g - (3.0 * p[k] - sum_sq) / (d + 1.0);
        max_af = max_af.max(af.abs());
    }

    Ok(PurityReport {
        d: sic.d(),
        r2,
        r3,
        max_fixed_point_residual: max_fp,
        max_alpha_form_residual: max_af,
        is_pure: r2.abs() <= tolerance && r3.abs() <= tolerance,
    })
}

/// Split of one slice C_k of the c tensor into its flat direction and a
/// projection operator.
#[derive(Clone, Debug)]
pub struct CkDecomposition {
    /// 1-based element index the slice belongs to.
    pub k: usize,
    /// The vector m_k: 1 in slot k, 1/(d+1) elsewhere.
    pub m: Vec<f64>,
    /// Q_k = (C_k - m_km_kᵀ)·2(d+1)/d, a rank-(2d-2) orthogonal projection.
    pub q: DMatrix<f64>,
    /// Worst deviation from symmetry, idempotency, and trace 2d-2.
    pub residual: f64,
}

/// Decomposes C_k (k is 1-based) and checks that the remainder really is a
/// projection of trace 2d-2; a residual beyond the soft tolerance signals
/// that the coefficients did not come from a SIC and is returned as an error.
pub fn ck_decompose(coeffs: &StructureCoeffs, k: usize) -> Result<CkDecomposition> {
    let n = coeffs.n();
    if k < 1 || k > n {
        return Err(SicError::IndexOutOfRange { index: k, len: n });
    }
    let d = coeffs.d() as f64;
    let k0 = k - 1;
    let mut m = vec![1.0 / (d + 1.0); n];
    m[k0] = 1.0;
    let mut q = coeffs.c_matrix(k0);
    for i in 0..n {
        for j in 0..n {
            q[(i, j)] = (q[(i, j)] - m[i] * m[j]) * 2.0 * (d + 1.0) / d;
        }
    }

    let mut residual = (q.trace() - (2.0 * d - 2.0)).abs();
    let qq = &q * &q;
    for i in 0..n {
        for j in 0..n {
            residual = residual
                .max((q[(i, j)] - q[(j, i)]).abs())
                .max((qq[(i, j)] - q[(i, j)]).abs());
        }
    }
    if residual > tol::SOFT {
        return Err(SicError::CkResidual { k, residual });
    }
    Ok(CkDecomposition { k, m, q, residual })
}

/// Expansion coefficients b of a matrix square root of a state,
/// constrained to the ellipsoid (Σb)² + dΣb² = d+1.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtCoeffs {
    d: usize,
    b: Vec<f64>,
}

impl SqrtCoeffs {
    /// Accepts coefficients within 1e-8 of the ellipsoid, then stores them
    /// rescaled exactly onto it so reconstructed probabilities sum to 1 at
    /// machine precision.
    pub fn new(d: usize, b: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        if b.len() != d * d {
            return Err(SicError::DimensionMismatch {
                what: "coefficient length",
                expected: d * d,
                got: b.len(),
            });
        }
        let quad = ellipsoid_form(d, &b);
        let residual = (quad - (d as f64 + 1.0)).abs();
        if residual > tol::ELLIPSOID {
            return Err(SicError::EllipsoidConstraint { residual });
        }
        let t = ((d as f64 + 1.0) / quad).sqrt();
        let b = b.into_iter().map(|x| x * t).collect();
        Ok(Self { d, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }
}

/// (Σb)² + dΣb².
fn ellipsoid_form(d: usize, b: &[f64]) -> f64 {
    let s: f64 = b.iter().sum();
    let s2: f64 = b.iter().map(|x| x * x).sum();
    s * s + d as f64 * s2
}

/// Probability vector of the state B² with B = Σ_i b_iΠ_i. The ellipsoid
/// constraint makes tr B² = 1, and B² is PSD by construction, so the result
/// always validates.
pub fn sqrt_probs(b: &SqrtCoeffs, sic: &SicSet) -> Result<ProbVector> {
    if b.d() != sic.d() {
        return Err(SicError::DimensionMismatch {
            what: "coefficient dimension",
            expected: sic.d(),
            got: b.d(),
        });
    }
    let d = sic.d();
    let mut bm = CMatrix::zeros(d, d);
    for (i, pi) in sic.projectors().iter().enumerate() {
        bm += pi.scale(b.b()[i]);
    }
    let b2 = &bm * &bm;
    let p = sic
        .projectors()
        .iter()
        .map(|pi| trace_product_re(&b2, pi) / d as f64)
        .collect();
    ProbVector::new(p)
}

/// Draws a Gaussian direction in coefficient space, rescales it onto the
/// ellipsoid (the positive root of the scaling quadratic), and maps it
/// through [`sqrt_probs`]. Every output is a valid state.
pub fn sample_state_sqrt<R: Rng>(sic: &SicSet, rng: &mut R) -> (SqrtCoeffs, ProbVector) {
    let d = sic.d();
    let n = sic.len();
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let quad = ellipsoid_form(d, &g);
        if quad < 1e-12 {
            continue;
        }
        let t = ((d as f64 + 1.0) / quad).sqrt();
        let b = SqrtCoeffs::new(d, g.into_iter().map(|x| x * t).collect())
            .expect("rescaled point satisfies the constraint");
        let p = sqrt_probs(&b, sic).expect("dimensions match by construction");
        return (b, p);
    }
}

/// Inverse of the parameterization: expands the principal square root of ρ
/// in the element basis, b_i = ((d+1)tr(BΠ_i) - tr B)/d.
pub fn sqrt_coeffs_from_state(rho: &DensityMatrix, sic: &SicSet) -> Result<SqrtCoeffs> {
    if rho.d() != sic.d() {
        return Err(SicError::DimensionMismatch {
            what: "state dimension",
            expected: sic.d(),
            got: rho.d(),
        });
    }
    let d = sic.d() as f64;
    let b = principal_sqrt(rho.matrix());
    let trb = b.trace().re;
    let coeffs = sic
        .projectors()
        .iter()
        .map(|pi| ((d + 1.0) * trace_product_re(&b, pi) - trb) / d)
        .collect();
    SqrtCoeffs::new(sic.d(), coeffs)
}
