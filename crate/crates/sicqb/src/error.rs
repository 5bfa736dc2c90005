//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Indices reported in messages are 1-based, matching the public element
/// ordering of a SIC set (i = a·d + b + 1 for the Weyl-Heisenberg orbit).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SicError {
    #[error("built-in SICs are available for d in {{2, 3}}, got d = {d}")]
    UnsupportedBuiltin { d: usize },

    #[error("dimension must be at least 2, got {d}")]
    DimensionTooSmall { d: usize },

    #[error("dimension {d} exceeds the configured maximum {max}")]
    DimensionTooLarge { d: usize, max: usize },

    #[error("{what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("vector norm deviates from 1 by {residual:.3e}")]
    NotNormalized { residual: f64 },

    #[error("matrix deviates from Hermitian symmetry by {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("trace deviates from 1 by {residual:.3e}")]
    TraceNotOne { residual: f64 },

    #[error("matrix has minimum eigenvalue {min_eigenvalue:.6e}, below the PSD floor")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix deviates from unitarity by {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("probability components sum to 1 {residual:+.3e}")]
    NotOnSimplex { residual: f64 },

    #[error("probability component {index} = {value:.6e} lies outside [0, 1]")]
    ComponentOutOfRange { index: usize, value: f64 },

    #[error("column {column} of the conditional matrix sums to {sum}, not 1")]
    NotStochastic { column: usize, sum: f64 },

    #[error("conditional matrix is not doubly stochastic: worst sum deviation {residual:.3e}")]
    NotDoublyStochastic { residual: f64 },

    #[error("effect {index} has minimum eigenvalue {min_eigenvalue:.6e}, below the PSD floor")]
    EffectNotPsd { index: usize, min_eigenvalue: f64 },

    #[error("effects sum deviates from the identity by {residual:.3e}")]
    IncompletePovm { residual: f64 },

    #[error(
        "no SIC found for d = {d} after {restarts} restarts; best overlap residual {best_residual:.3e}"
    )]
    SicNotFound {
        d: usize,
        restarts: usize,
        best_residual: f64,
    },

    #[error("fundamental inequality violated: q({index}) = {value:.6e} is outside [0, 1]")]
    FundamentalInequality { index: usize, value: f64 },

    #[error("posterior undefined: row {outcome} of the conditional matrix sums to zero")]
    UndefinedPosterior { outcome: usize },

    #[error("square-root coefficients miss the ellipsoid constraint by {residual:.3e}")]
    EllipsoidConstraint { residual: f64 },

    #[error("C_{k} decomposition residual {residual:.3e} exceeds tolerance; input is not a SIC")]
    CkResidual { k: usize, residual: f64 },

    #[error("basis is not a set of orthonormal projectors: residual {residual:.3e}")]
    NotOrthonormal { residual: f64 },

    #[error("no integer outcome count n solves (qbar, m0) = ({qbar}, {m0}): inconsistent pair")]
    InconsistentPair { qbar: u64, m0: u64 },

    #[error("m0 must be at least 2, got {m0}")]
    M0TooSmall { m0: u64 },

    #[error("table bounds must be at least 2, got qbar_max = {qbar_max}, m0_max = {m0_max}")]
    BadTableBounds { qbar_max: u64, m0_max: u64 },
}

pub type Result<T> = std::result::Result<T, SicError>;
