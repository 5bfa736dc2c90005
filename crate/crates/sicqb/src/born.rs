//! The Born rule as an addition to probability theory.
//!
//! Fix the SIC measurement "in the sky" and any POVM {F_j} "on the ground".
//! With the prior p over sky outcomes and the conditionals
//! r(j|i) = tr(Π_i F_j), the probability of ground outcome j is not the
//! classical total-probability sum s(j) = Σ_i p(i) r(j|i) but
//!
//! ```text
//! q(j) = (d+1) Σ_i p(i) r(j|i) - (1/d) Σ_i r(j|i)
//! ```
//!
//! which reproduces tr(ρF_j) exactly. This module builds conditional
//! matrices, evaluates the rule and its classical comparator, treats unitary
//! evolution as the doubly stochastic special case, forms reciprocity
//! posteriors, and tests in-step unpredictability (constant row sums d²/m).

use crate::error::{Result, SicError};
use crate::linalg::{
    hermiticity_residual, identity, max_abs, min_eigenvalue, outer, trace_product_re,
    unitarity_residual, CMatrix, CVector,
};
use crate::sic::SicSet;
use crate::state::ProbVector;
use crate::tol;
use nalgebra::DMatrix;
use serde::Serialize;

/// A positive operator-valued measure: any number of PSD effects summing to
/// the identity.
#[derive(Clone, Debug)]
pub struct Povm {
    d: usize,
    effects: Vec<CMatrix>,
}

impl Povm {
    /// Validates shape, Hermiticity and positivity of every effect (floor
    /// -1e-10), and completeness Σ_jF_j = I within 1e-10. Zero effects are
    /// legal.
    pub fn new(d: usize, effects: Vec<CMatrix>) -> Result<Self> {
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        if effects.is_empty() {
            return Err(SicError::DimensionMismatch {
                what: "effect count",
                expected: 1,
                got: 0,
            });
        }
        let mut sum = CMatrix::zeros(d, d);
        for (j, f) in effects.iter().enumerate() {
            if f.nrows() != d || f.ncols() != d {
                return Err(SicError::DimensionMismatch {
                    what: "effect size",
                    expected: d,
                    got: f.nrows().max(f.ncols()),
                });
            }
            let herm = hermiticity_residual(f);
            if herm > tol::VERIFY {
                return Err(SicError::NotHermitian { residual: herm });
            }
            let lo = min_eigenvalue(f);
            if lo < -tol::PSD_FLOOR {
                return Err(SicError::EffectNotPsd {
                    index: j + 1,
                    min_eigenvalue: lo,
                });
            }
            sum += f;
        }
        let residual = max_abs(&(sum - identity(d)));
        if residual > tol::VERIFY {
            return Err(SicError::IncompletePovm { residual });
        }
        Ok(Self { d, effects })
    }

    /// The SIC itself as a POVM: effects Π_i/d in element order.
    pub fn from_sic(sic: &SicSet) -> Self {
        Self {
            d: sic.d(),
            effects: sic.effects(),
        }
    }

    /// Von Neumann measurement of an orthonormal basis (d rank-1 projectors).
    pub fn von_neumann(vectors: &[CVector]) -> Result<Self> {
        let d = vectors.len();
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        let mut residual = 0.0_f64;
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(SicError::DimensionMismatch {
                    what: "basis vector length",
                    expected: d,
                    got: v.len(),
                });
            }
            for (j, w) in vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                residual = residual.max((v.dotc(w).norm() - target).abs());
            }
        }
        if residual > tol::UNITARY {
            return Err(SicError::NotOrthonormal { residual });
        }
        Ok(Self {
            d,
            effects: vectors.iter().map(outer).collect(),
        })
    }

    /// Von Neumann measurement of the computational basis.
    pub fn computational_basis(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        let effects = (0..d)
            .map(|k| {
                let mut e = CMatrix::zeros(d, d);
                e[(k, k)] = num_complex::Complex64::ONE;
                e
            })
            .collect();
        Ok(Self { d, effects })
    }

    /// The trivial single-outcome measurement {I}.
    pub fn trivial(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(SicError::DimensionTooSmall { d });
        }
        Ok(Self {
            d,
            effects: vec![identity(d)],
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of outcomes.
    pub fn m(&self) -> usize {
        self.effects.len()
    }

    pub fn effects(&self) -> &[CMatrix] {
        &self.effects
    }
}

/// Conditional probabilities r(j|i) of ground outcome j given sky outcome i,
/// stored as an m×n matrix (row = ground, column = sky). Every column is a
/// distribution; row and column sums are cached at construction.
#[derive(Clone, Debug)]
pub struct ConditionalMatrix {
    r: DMatrix<f64>,
    row_sums: Vec<f64>,
    column_sums: Vec<f64>,
}

impl ConditionalMatrix {
    /// Validates entries in [0,1] and column-stochasticity within 1e-12.
    pub fn new(r: DMatrix<f64>) -> Result<Self> {
        let (m, n) = r.shape();
        if m == 0 || n == 0 {
            return Err(SicError::DimensionMismatch {
                what: "conditional shape",
                expected: 1,
                got: 0,
            });
        }
        for j in 0..m {
            for i in 0..n {
                let x = r[(j, i)];
                if !(-tol::EXACT..=1.0 + tol::EXACT).contains(&x) {
                    return Err(SicError::ComponentOutOfRange {
                        index: j * n + i + 1,
                        value: x,
                    });
                }
            }
        }
        let mut column_sums = Vec::with_capacity(n);
        for i in 0..n {
            let s: f64 = (0..m).map(|j| r[(j, i)]).sum();
            if (s - 1.0).abs() > tol::EXACT {
                return Err(SicError::NotStochastic {
                    column: i + 1,
                    sum: s,
                });
            }
            column_sums.push(s);
        }
        let row_sums = (0..m).map(|j| (0..n).map(|i| r[(j, i)]).sum()).collect();
        Ok(Self {
            r,
            row_sums,
            column_sums,
        })
    }

    /// Ground outcomes.
    pub fn m(&self) -> usize {
        self.r.nrows()
    }

    /// Sky outcomes.
    pub fn n(&self) -> usize {
        self.r.ncols()
    }

    /// r(j|i), 0-based.
    pub fn r(&self, j: usize, i: usize) -> f64 {
        self.r[(j, i)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.r
    }

    pub fn row_sums(&self) -> &[f64] {
        &self.row_sums
    }

    pub fn column_sums(&self) -> &[f64] {
        &self.column_sums
    }

    /// Worst deviation of any row sum from 1.
    fn double_stochastic_residual(&self) -> f64 {
        self.row_sums
            .iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// r(j|i) = tr(Π_i F_j) for a ground POVM against the sky SIC. Columns are
/// automatically stochastic because the effects sum to the identity.
pub fn conditional_matrix(sic: &SicSet, ground: &Povm) -> Result<ConditionalMatrix> {
    if sic.d() != ground.d() {
        return Err(SicError::DimensionMismatch {
            what: "ground dimension",
            expected: sic.d(),
            got: ground.d(),
        });
    }
    let m = ground.m();
    let n = sic.len();
    let r = DMatrix::from_fn(m, n, |j, i| {
        trace_product_re(sic.projector(i), &ground.effects()[j])
    });
    ConditionalMatrix::new(r)
}

/// The conditional matrix of ground = sky: r_S(j|i) = (δ_ij + 1/d)/(d+1).
pub fn sky_conditional(sic: &SicSet) -> ConditionalMatrix {
    let d = sic.d() as f64;
    let n = sic.len();
    let r = DMatrix::from_fn(n, n, |j, i| {
        let delta = if i == j { 1.0 } else { 0.0 };
        (delta + 1.0 / d) / (d + 1.0)
    });
    ConditionalMatrix::new(r).expect("analytic matrix is stochastic")
}

fn check_urgleichung_shapes(p: &ProbVector, r: &ConditionalMatrix, d: usize) -> Result<()> {
    let n = d * d;
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
    Ok(())
}

/// Checks each candidate probability against the fundamental inequality
/// band, then hands the vector to the simplex constructor.
fn finish_ground_distribution(q: Vec<f64>) -> Result<ProbVector> {
    for (j, &x) in q.iter().enumerate() {
        if !(-tol::Q_SLACK..=1.0 + tol::Q_SLACK).contains(&x) {
            return Err(SicError::FundamentalInequality {
                index: j + 1,
                value: x,
            });
        }
    }
    ProbVector::new(q)
}

/// The quantum law of total probability. For p and R arising from an actual
/// state and POVM the result equals [tr(ρF_j)]_j; a component escaping
/// [0,1] beyond the documented slack means the prior was not a valid state
/// (or R not a genuine ground measurement) and is reported as a
/// fundamental-inequality error rather than clamped.
pub fn urgleichung(p: &ProbVector, r: &ConditionalMatrix, d: usize) -> Result<ProbVector> {
    check_urgleichung_shapes(p, r, d)?;
    let df = d as f64;
    let q = (0..r.m())
        .map(|j| {
            let mix: f64 = (0..r.n()).map(|i| p[i] * r.r(j, i)).sum();
            (df + 1.0) * mix - r.row_sums()[j] / df
        })
        .collect();
    finish_ground_distribution(q)
}

/// The classical comparator s(j) = Σ_i p(i) r(j|i); always on the simplex.
pub fn classical_ltp(p: &ProbVector, r: &ConditionalMatrix) -> Result<ProbVector> {
    if p.len() != r.n() {
        return Err(SicError::DimensionMismatch {
            what: "prior length",
            expected: r.n(),
            got: p.len(),
        });
    }
    let s = (0..r.m())
        .map(|j| (0..r.n()).map(|i| p[i] * r.r(j, i)).sum())
        .collect();
    ProbVector::new(s)
}

/// Unitary evolution as conditionals r_U(j|i) = tr(UΠ_iU†Π_j)/d. The result
/// is doubly stochastic; both sum families are re-checked at 1e-12 to catch
/// numerical trouble.
pub fn unitary_transition(sic: &SicSet, u: &CMatrix) -> Result<ConditionalMatrix> {
    let d = sic.d();
    if u.nrows() != d || u.ncols() != d {
        return Err(SicError::DimensionMismatch {
            what: "unitary size",
            expected: d,
            got: u.nrows().max(u.ncols()),
        });
    }
    let res = unitarity_residual(u);
    if res > tol::UNITARY {
        return Err(SicError::NotUnitary { residual: res });
    }
    let rotated: Vec<CMatrix> = sic.projectors().iter().map(|p| u * p * u.adjoint()).collect();
    let n = sic.len();
    let r = DMatrix::from_fn(n, n, |j, i| {
        trace_product_re(&rotated[i], sic.projector(j)) / d as f64
    });
    let cm = ConditionalMatrix::new(r)?;
    let dev = cm.double_stochastic_residual();
    if dev > tol::EXACT {
        return Err(SicError::NotDoublyStochastic { residual: dev });
    }
    Ok(cm)
}

/// Evolution in probability terms: q(j) = (d+1)Σ_i p(i)r_U(j|i) - 1/d.
/// Requires a doubly stochastic square R with d² outcomes; preserves
/// validity of states.
pub fn evolve_probs(p: &ProbVector, r: &ConditionalMatrix, d: usize) -> Result<ProbVector> {
    check_urgleichung_shapes(p, r, d)?;
    if r.m() != r.n() {
        return Err(SicError::DimensionMismatch {
            what: "conditional rows",
            expected: r.n(),
            got: r.m(),
        });
    }
    let dev = r.double_stochastic_residual();
    if dev > tol::EXACT {
        return Err(SicError::NotDoublyStochastic { residual: dev });
    }
    let df = d as f64;
    let q = (0..r.m())
        .map(|j| {
            let mix: f64 = (0..r.n()).map(|i| p[i] * r.r(j, i)).sum();
            (df + 1.0) * mix - 1.0 / df
        })
        .collect();
    finish_ground_distribution(q)
}

/// Bayesian reading of a conditional matrix row: starting from maximal
/// ignorance, seeing ground outcome j (1-based) updates the sky
/// probabilities to Prob(i|j) = r(j|i)/Σ_k r(j|k).
pub fn reciprocity_posterior(r: &ConditionalMatrix, j: usize) -> Result<ProbVector> {
    if j < 1 || j > r.m() {
        return Err(SicError::IndexOutOfRange {
            index: j,
            len: r.m(),
        });
    }
    let total = r.row_sums()[j - 1];
    if total <= tol::EXACT {
        return Err(SicError::UndefinedPosterior { outcome: j });
    }
    let p = (0..r.n()).map(|i| r.r(j - 1, i) / total).collect();
    ProbVector::new(p)
}

/// Outcome of the in-step unpredictability test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum IsuResult {
    /// Every row sum equals d²/m: a uniform sky prior leaves the ground
    /// outcome distribution uniform.
    Isu { m: usize },
    NotIsu { max_row_sum_deviation: f64 },
}

/// Tests whether all row sums equal d²/m within `tolerance`.
pub fn isu_check(r: &ConditionalMatrix, d: usize, tolerance: f64) -> IsuResult {
    let target = (d * d) as f64 / r.m() as f64;
    let dev = r
        .row_sums()
        .iter()
        .map(|s| (s - target).abs())
        .fold(0.0, f64::max);
    if dev <= tolerance {
        IsuResult::Isu { m: r.m() }
    } else {
        IsuResult::NotIsu {
            max_row_sum_deviation: dev,
        }
    }
}
