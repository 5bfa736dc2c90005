//! SIC-POVM toolkit for finite-dimensional quantum states.
//!
//! A symmetric informationally complete POVM (SIC) is a set of d² rank-1
//! effects E_i = Π_i/d whose projectors have equal pairwise overlaps
//! tr(Π_iΠ_j) = (dδ_ij + 1)/(d+1). Measuring against a fixed SIC turns every
//! quantum state into an ordinary probability vector of length d², and turns
//! the Born rule into an affine relation between probability assignments. This
//! crate implements that representation end to end:
//!
//! * [`sic`]: built-in d = 2 and d = 3 SICs, Weyl-Heisenberg orbits,
//!   verification, and the Frobenius objective; [`search`]: a seeded
//!   random-restart optimizer that finds fiducial vectors numerically.
//! * [`state`]: density-matrix ↔ probability-vector maps, validity testing,
//!   structure coefficients, pure-state variety tests, and the square-root
//!   parameterization of valid states.
//! * [`born`]: conditional matrices r(j|i), the urgleichung (the Born rule as
//!   a quasi-stochastic total-probability law), its classical comparator,
//!   unitary evolution as a doubly stochastic map, and reciprocity posteriors.
//! * [`geometry`]: quantitative probes of the state space inside the simplex
//!   (spheres, flats, zero counts, maximally distant sets, entropies).
//! * [`axioms`]: exact-rational recovery of the quantum constants from the
//!   generalized urgleichung's consistency constraints.
//! * [`io`]: serde schemas for every exchange format; [`selftest`]: the
//!   acceptance-criteria runner used by `sicqb selftest`.
//!
//! All randomness is seeded explicitly; identical seeds give identical
//! results, bit for bit.

pub mod axioms;
pub mod born;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod random;
pub mod search;
pub mod selftest;
pub mod sic;
pub mod state;
pub mod tol;

pub use error::{Result, SicError};
