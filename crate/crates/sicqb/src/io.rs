//! JSON schemas for every object that crosses the CLI boundary.
//!
//! All complex data is written as `[re, im]` pairs, matrices row-major.
//! Parsing distinguishes malformed JSON (a syntax/shape problem) from a
//! structurally fine document describing an invalid object (for example a
//! non-normalized fiducial); callers map the former to usage errors and the
//! latter to verification failures.

use crate::born::{ConditionalMatrix, Povm};
use crate::error::SicError;
use crate::linalg::{CMatrix, CVector};
use crate::sic::{Fiducial, SicSet};
use crate::state::{DensityMatrix, ProbVector};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Errors crossing the serialization boundary.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    /// The document is not valid JSON for the expected schema.
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// The document parsed but describes an invalid object.
    #[error(transparent)]
    Domain(#[from] SicError),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

fn pack_matrix(m: &CMatrix) -> Vec<[f64; 2]> {
    let (rows, cols) = m.shape();
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let z = m[(r, c)];
            out.push([z.re, z.im]);
        }
    }
    out
}

fn unpack_matrix(d: usize, entries: &[[f64; 2]], what: &'static str) -> Result<CMatrix, SicError> {
    if entries.len() != d * d {
        return Err(SicError::DimensionMismatch {
            what,
            expected: d * d,
            got: entries.len(),
        });
    }
    Ok(CMatrix::from_fn(d, d, |r, c| {
        let [re, im] = entries[r * d + c];
        Complex64::new(re, im)
    }))
}

/// `{"d": int, "amplitudes": [[re, im], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiducialJson {
    pub d: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&Fiducial> for FiducialJson {
    fn from(f: &Fiducial) -> Self {
        Self {
            d: f.d(),
            amplitudes: f.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<FiducialJson> for Fiducial {
    type Error = SicError;
    fn try_from(j: FiducialJson) -> Result<Self, SicError> {
        if j.amplitudes.len() != j.d {
            return Err(SicError::DimensionMismatch {
                what: "amplitude count",
                expected: j.d,
                got: j.amplitudes.len(),
            });
        }
        Fiducial::new(
            j.amplitudes
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect(),
        )
    }
}

pub fn parse_fiducial(s: &str) -> IoResult<Fiducial> {
    let j: FiducialJson = serde_json::from_str(s)?;
    Ok(Fiducial::try_from(j)?)
}

/// `{"d": int, "projectors": [[[re, im], ...row-major...], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SicSetJson {
    pub d: usize,
    pub projectors: Vec<Vec<[f64; 2]>>,
}

impl From<&SicSet> for SicSetJson {
    fn from(s: &SicSet) -> Self {
        Self {
            d: s.d(),
            projectors: s.projectors().iter().map(pack_matrix).collect(),
        }
    }
}

impl TryFrom<SicSetJson> for SicSet {
    type Error = SicError;
    fn try_from(j: SicSetJson) -> Result<Self, SicError> {
        let projectors = j
            .projectors
            .iter()
            .map(|e| unpack_matrix(j.d, e, "projector entries"))
            .collect::<Result<Vec<_>, _>>()?;
        SicSet::from_projectors(j.d, projectors)
    }
}

pub fn parse_sic_set(s: &str) -> IoResult<SicSet> {
    let j: SicSetJson = serde_json::from_str(s)?;
    Ok(SicSet::try_from(j)?)
}

/// `{"n": int, "p": [real, ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbVectorJson {
    pub n: usize,
    pub p: Vec<f64>,
}

impl From<&ProbVector> for ProbVectorJson {
    fn from(p: &ProbVector) -> Self {
        Self {
            n: p.len(),
            p: p.components().to_vec(),
        }
    }
}

impl TryFrom<ProbVectorJson> for ProbVector {
    type Error = SicError;
    fn try_from(j: ProbVectorJson) -> Result<Self, SicError> {
        if j.p.len() != j.n {
            return Err(SicError::DimensionMismatch {
                what: "probability length",
                expected: j.n,
                got: j.p.len(),
            });
        }
        ProbVector::new(j.p)
    }
}

pub fn parse_prob_vector(s: &str) -> IoResult<ProbVector> {
    let j: ProbVectorJson = serde_json::from_str(s)?;
    Ok(ProbVector::try_from(j)?)
}

/// `{"d": int, "entries": [[re, im], ...row-major...]}`; used for density
/// matrices and unitaries alike.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        Self {
            d: m.nrows(),
            entries: pack_matrix(m),
        }
    }
}

/// Parses the raw matrix without imposing any physics on it.
pub fn parse_matrix(s: &str) -> IoResult<CMatrix> {
    let j: MatrixJson = serde_json::from_str(s)?;
    Ok(unpack_matrix(j.d, &j.entries, "matrix entries")?)
}

/// Parses and validates a density matrix.
pub fn parse_density(s: &str) -> IoResult<DensityMatrix> {
    let m = parse_matrix(s)?;
    Ok(DensityMatrix::new(m)?)
}

/// `{"d": int, "effects": [[[re, im], ...], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PovmJson {
    pub d: usize,
    pub effects: Vec<Vec<[f64; 2]>>,
}

impl From<&Povm> for PovmJson {
    fn from(p: &Povm) -> Self {
        Self {
            d: p.d(),
            effects: p.effects().iter().map(pack_matrix).collect(),
        }
    }
}

impl TryFrom<PovmJson> for Povm {
    type Error = SicError;
    fn try_from(j: PovmJson) -> Result<Self, SicError> {
        let effects = j
            .effects
            .iter()
            .map(|e| unpack_matrix(j.d, e, "effect entries"))
            .collect::<Result<Vec<_>, _>>()?;
        Povm::new(j.d, effects)
    }
}

pub fn parse_povm(s: &str) -> IoResult<Povm> {
    let j: PovmJson = serde_json::from_str(s)?;
    Ok(Povm::try_from(j)?)
}

/// `{"m": int, "n": int, "r": [[...], ...]}`, row j = ground outcome,
/// column i = sky outcome.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionalMatrixJson {
    pub m: usize,
    pub n: usize,
    pub r: Vec<Vec<f64>>,
}

impl From<&ConditionalMatrix> for ConditionalMatrixJson {
    fn from(c: &ConditionalMatrix) -> Self {
        Self {
            m: c.m(),
            n: c.n(),
            r: (0..c.m())
                .map(|j| (0..c.n()).map(|i| c.r(j, i)).collect())
                .collect(),
        }
    }
}

impl TryFrom<ConditionalMatrixJson> for ConditionalMatrix {
    type Error = SicError;
    fn try_from(j: ConditionalMatrixJson) -> Result<Self, SicError> {
        if j.r.len() != j.m {
            return Err(SicError::DimensionMismatch {
                what: "conditional rows",
                expected: j.m,
                got: j.r.len(),
            });
        }
        for row in &j.r {
            if row.len() != j.n {
                return Err(SicError::DimensionMismatch {
                    what: "conditional columns",
                    expected: j.n,
                    got: row.len(),
                });
            }
        }
        ConditionalMatrix::new(DMatrix::from_fn(j.m, j.n, |r, c| j.r[r][c]))
    }
}

pub fn parse_conditional(s: &str) -> IoResult<ConditionalMatrix> {
    let j: ConditionalMatrixJson = serde_json::from_str(s)?;
    Ok(ConditionalMatrix::try_from(j)?)
}

/// Serializes any of the schema types compactly.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("schema types always serialize")
}

/// Pretty variant for files meant to be read by people.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("schema types always serialize")
}

/// Packs a state vector for inclusion in fiducial documents.
pub fn pack_vector(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::sic::builtin_sic;

    #[test]
    fn fiducial_round_trip() {
        let f = Fiducial::new(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let s = to_json(&FiducialJson::from(&f));
        let back = parse_fiducial(&s).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn sic_set_round_trip() {
        let sic = builtin_sic(2).unwrap();
        let s = to_json(&SicSetJson::from(&sic));
        let back = parse_sic_set(&s).unwrap();
        for (a, b) in sic.projectors().iter().zip(back.projectors()) {
            assert!(max_abs_diff(a, b) < 1e-15);
        }
    }

    #[test]
    fn prob_vector_round_trip_and_validation() {
        let p = ProbVector::uniform(4);
        let back = parse_prob_vector(&to_json(&ProbVectorJson::from(&p))).unwrap();
        assert_eq!(p, back);

        let bad = r#"{"n": 4, "p": [0.5, 0.5]}"#;
        assert!(matches!(
            parse_prob_vector(bad),
            Err(IoError::Domain(SicError::DimensionMismatch { .. }))
        ));
        let off = r#"{"n": 2, "p": [0.7, 0.2]}"#;
        assert!(matches!(
            parse_prob_vector(off),
            Err(IoError::Domain(SicError::NotOnSimplex { .. }))
        ));
        assert!(matches!(
            parse_prob_vector("{not json"),
            Err(IoError::Json(_))
        ));
    }

    #[test]
    fn density_round_trip() {
        let sic = builtin_sic(2).unwrap();
        let rho = DensityMatrix::new(sic.projector(2).clone()).unwrap();
        let s = to_json(&MatrixJson::from(rho.matrix()));
        let back = parse_density(&s).unwrap();
        assert!(max_abs_diff(rho.matrix(), back.matrix()) < 1e-15);
        // Row-major order pins entry (0,1) at slot 1.
        let j: MatrixJson = serde_json::from_str(&s).unwrap();
        assert!((j.entries[1][0] - rho.matrix()[(0, 1)].re).abs() < 1e-15);
    }

    #[test]
    fn rejects_unnormalized_density_as_domain_error() {
        let s = r#"{"d": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}"#;
        assert!(matches!(
            parse_density(s),
            Err(IoError::Domain(SicError::TraceNotOne { .. }))
        ));
    }

    #[test]
    fn povm_round_trip() {
        let povm = Povm::computational_basis(3).unwrap();
        let back = parse_povm(&to_json(&PovmJson::from(&povm))).unwrap();
        assert_eq!(back.m(), 3);
        for (a, b) in povm.effects().iter().zip(back.effects()) {
            assert!(max_abs_diff(a, b) < 1e-15);
        }
    }

    #[test]
    fn conditional_round_trip() {
        let sic = builtin_sic(2).unwrap();
        let r = crate::born::sky_conditional(&sic);
        let back = parse_conditional(&to_json(&ConditionalMatrixJson::from(&r))).unwrap();
        assert_eq!(back.m(), 4);
        for j in 0..4 {
            for i in 0..4 {
                assert!((back.r(j, i) - r.r(j, i)).abs() < 1e-15);
            }
        }
    }
}
