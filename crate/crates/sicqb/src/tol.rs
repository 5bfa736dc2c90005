//! Central numerical tolerances.
//!
//! Each constant names the class of computation it budgets for, so call sites
//! state their reason by choosing the constant rather than a bare literal.

/// Identities that hold to rounding error in double precision: simplex sums,
/// traces, norms, and round trips through exact linear maps.
pub const EXACT: f64 = 1e-12;

/// Default SIC verification tolerance on overlaps, idempotency, and the
/// resolution of identity. Double precision leaves two orders of headroom at
/// d <= 12, so a set this far off is wrong, not noisy.
pub const VERIFY: f64 = 1e-10;

/// Acceptance tolerance for the numerical fiducial search: every pairwise
/// overlap of the orbit must land within this distance of 1/(d+1).
pub const SEARCH: f64 = 1e-8;

/// Absolute floor for "minimum eigenvalue >= 0" checks. Eigensolver noise on
/// Hermitian matrices of size d <= 16 stays orders of magnitude below this.
pub const PSD_FLOOR: f64 = 1e-10;

/// Unitarity check on evolution inputs, max |U†U - I|.
pub const UNITARY: f64 = 1e-10;

/// Residual budget for derived quantities that accumulate a few hundred
/// floating-point operations: projection idempotency, cubic variety sums.
pub const SOFT: f64 = 1e-9;

/// A probability component below this counts as an exact zero when auditing
/// zero counts; set by the eigen/trace noise floor at these dimensions.
pub const ZERO: f64 = 1e-9;

/// Geometry equality checks on quantities quadratic in the probabilities.
pub const GEOM: f64 = 1e-10;

/// Slack for the fundamental inequality 0 <= q(j) <= 1. Genuine states and
/// measurements keep q within rounding of the interval, so an excursion past
/// this signals an invalid input rather than noise.
pub const Q_SLACK: f64 = 1e-9;

/// Largest residual accepted when taking externally supplied square-root
/// coefficients onto the ellipsoid constraint surface.
pub const ELLIPSOID: f64 = 1e-8;
