//! The acceptance suite: twelve numbered criteria covering every module,
//! runnable as a whole or one criterion at a time.
//!
//! Each criterion reports pass/fail with a short measurement summary and its
//! runtime. Criterion 2 (the multi-dimension search) is the only slow one
//! and is skipped unless explicitly requested.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use serde::Serialize;

use crate::axioms::{certainty_check, computational_projectors, solve_constants};
use crate::born::{conditional_matrix, evolve_probs, reciprocity_posterior, unitary_transition, urgleichung, Povm};
use crate::error::{Result, SicError};
use crate::geometry::{max_distant_gram, nflat_min_distance, sphere_radius_sq, zeros_audit};
use crate::linalg::max_abs_diff;
use crate::random::{haar_unitary, haar_vector, random_povm, rng_from_seed, wishart_matrix};
use crate::search::{find_sic, SearchOptions};
use crate::sic::{builtin_sic, fiducial_orbit, verify_sic, SicSet};
use crate::state::{
    ck_decompose, probs_to_state, pure_state_probs, purity_classify, sample_state_sqrt,
    state_to_probs, structure_coeffs, validate_probs, DensityMatrix,
};
use crate::tol;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

/// Number of acceptance criteria.
pub const CRITERIA: usize = 12;

/// Search tolerance for cached non-builtin sets. Much tighter than the
/// default so that reconstruction identities downstream hold at their own
/// pinned tolerances; still comfortably above the f64 noise floor of the
/// overlap evaluation.
pub const POLISH_SEARCH_TOL: f64 = 1e-13;

/// Iteration budget backing the polished searches.
pub const POLISH_MAX_ITERS: usize = 20_000;

static SIC_CACHE: OnceLock<Mutex<HashMap<(usize, u64), SicSet>>> = OnceLock::new();

/// Returns the builtin set for d ∈ {2, 3} and otherwise a memoized
/// high-precision searched set, so repeated criteria share one search per
/// (dimension, seed).
pub fn cached_sic(d: usize, seed: u64) -> Result<SicSet> {
    if d == 2 || d == 3 {
        return builtin_sic(d);
    }
    let cache = SIC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("sic cache poisoned");
    if let Some(s) = guard.get(&(d, seed)) {
        return Ok(s.clone());
    }
    let defaults = SearchOptions::default();
    let opts = SearchOptions {
        search_tol: POLISH_SEARCH_TOL,
        max_iters: POLISH_MAX_ITERS,
        max_d: defaults.max_d.max(d),
        ..defaults
    };
    let fiducial = find_sic(d, seed, &opts)?;
    let set = fiducial_orbit(&fiducial);
    guard.insert((d, seed), set.clone());
    Ok(set)
}

/// One acceptance criterion's verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
}

/// Full suite verdict.
#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub slow_included: bool,
    pub criteria: Vec<CriterionOutcome>,
    pub pass: bool,
}

const NAMES: [&str; CRITERIA] = [
    "builtin-verification",
    "sic-search",
    "round-trip",
    "born-equivalence",
    "pure-state-variety",
    "structure-sums",
    "ck-decomposition",
    "unitary-dynamics",
    "geometry-numbers",
    "axiom-recovery",
    "sqrt-sampler",
    "reciprocity",
];

fn guarded(id: usize, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionOutcome {
    let start = Instant::now();
    let (pass, details) = match body() {
        Ok((pass, details)) => (pass, details),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome {
        id,
        name: NAMES[id - 1],
        pass,
        details: format!("{details}; {:.0} ms", start.elapsed().as_secs_f64() * 1e3),
    }
}

fn c1(_seed: u64) -> CriterionOutcome {
    guarded(1, || {
        let start = Instant::now();
        let mut worst = 0.0f64;
        let mut all = true;
        for d in [2, 3] {
            let report = verify_sic(&builtin_sic(d)?, tol::EXACT);
            worst = worst.max(report.max_overlap_deviation);
            all &= report.pass;
        }
        let secs = start.elapsed().as_secs_f64();
        let pass = all && worst < tol::EXACT && secs < 1.0;
        Ok((pass, format!("max overlap deviation {worst:.2e}")))
    })
}

fn c2(seed: u64) -> CriterionOutcome {
    guarded(2, || {
        let mut pass = true;
        let mut parts = Vec::new();
        for d in 2..=7 {
            let start = Instant::now();
            match find_sic(d, seed, &SearchOptions::default()) {
                Ok(f) => {
                    let report = verify_sic(&fiducial_orbit(&f), tol::SEARCH);
                    let secs = start.elapsed().as_secs_f64();
                    pass &= report.pass && secs < 300.0;
                    parts.push(format!("d={d} {:.1e} in {secs:.1}s", report.max_overlap_deviation));
                }
                Err(e) => {
                    pass = false;
                    parts.push(format!("d={d} {e}"));
                }
            }
        }
        Ok((pass, parts.join(", ")))
    })
}

fn c3(seed: u64) -> CriterionOutcome {
    guarded(3, || {
        let mut rng = rng_from_seed(seed);
        let mut worst = 0.0f64;
        for d in 2..=6 {
            let sic = cached_sic(d, seed)?;
            for _ in 0..100 {
                let rho = DensityMatrix::new(wishart_matrix(d, &mut rng))?;
                let p = state_to_probs(&rho, &sic)?;
                let back = probs_to_state(&p, &sic)?;
                worst = worst.max(max_abs_diff(&back, rho.matrix()));
            }
        }
        Ok((worst < tol::EXACT, format!("max round-trip error {worst:.2e}")))
    })
}

fn c4(seed: u64) -> CriterionOutcome {
    guarded(4, || {
        let mut rng = rng_from_seed(seed);
        let mut worst = 0.0f64;
        for d in [2, 3, 4] {
            let sic = cached_sic(d, seed)?;
            for trial in 0..100 {
                let rho = DensityMatrix::new(wishart_matrix(d, &mut rng))?;
                let povm = match trial % 10 {
                    0 => Povm::from_sic(&sic),
                    1 => Povm::computational_basis(d)?,
                    _ => {
                        let m = rng.random_range(2..=2 * d);
                        Povm::new(d, random_povm(d, m, &mut rng))?
                    }
                };
                let p = state_to_probs(&rho, &sic)?;
                let r = conditional_matrix(&sic, &povm)?;
                let q = urgleichung(&p, &r, d)?;
                for (j, effect) in povm.effects().iter().enumerate() {
                    let direct = crate::linalg::trace_product_re(rho.matrix(), effect);
                    worst = worst.max((q[j] - direct).abs());
                }
            }
        }
        Ok((worst < tol::EXACT, format!("max Born mismatch {worst:.2e}")))
    })
}

fn c5(seed: u64) -> CriterionOutcome {
    guarded(5, || {
        let mut rng = rng_from_seed(seed);
        let mut worst_r2 = 0.0f64;
        let mut worst_r3 = 0.0f64;
        for d in [2, 3, 4] {
            let sic = cached_sic(d, seed)?;
            for _ in 0..20 {
                let psi = haar_vector(d, &mut rng);
                let p = pure_state_probs(&psi, &sic)?;
                let report = purity_classify(&p, &sic, tol::SOFT)?;
                worst_r2 = worst_r2.max(report.r2.abs());
                worst_r3 = worst_r3.max(report.r3.abs());
            }
        }
        let pass = worst_r2 < tol::VERIFY && worst_r3 < tol::SOFT;
        Ok((pass, format!("max |r2| {worst_r2:.2e}, max |r3| {worst_r3:.2e}")))
    })
}

fn c6(_seed: u64) -> CriterionOutcome {
    guarded(6, || {
        let mut worst = 0.0f64;
        for d in [2, 3] {
            let sic = builtin_sic(d)?;
            let coeffs = structure_coeffs(&sic);
            let n = coeffs.n();
            let df = d as f64;
            for i in 0..n {
                for j in 0..n {
                    let pair: num_complex::Complex64 = (0..n).map(|k| coeffs.alpha(i, j, k)).sum();
                    let expected = (df * ((i == j) as u64 as f64) + 1.0) / (df + 1.0);
                    worst = worst.max((pair - expected).norm());
                }
            }
            for j in 0..n {
                for k in 0..n {
                    let first: num_complex::Complex64 = (0..n).map(|i| coeffs.alpha(i, j, k)).sum();
                    worst = worst.max((first - df * ((j == k) as u64 as f64)).norm());
                    let second: num_complex::Complex64 = (0..n).map(|l| coeffs.alpha(j, l, k)).sum();
                    worst = worst.max((second - df * ((j == k) as u64 as f64)).norm());
                }
            }
        }
        Ok((worst < tol::VERIFY, format!("max sum-rule residual {worst:.2e}")))
    })
}

fn c7(_seed: u64) -> CriterionOutcome {
    guarded(7, || {
        let mut worst = 0.0f64;
        for d in [2, 3] {
            let coeffs = structure_coeffs(&builtin_sic(d)?);
            for k in 1..=d * d {
                let ck = ck_decompose(&coeffs, k)?;
                worst = worst.max(ck.residual);
            }
        }
        Ok((worst < tol::SOFT, format!("max Q_k residual {worst:.2e}")))
    })
}

fn c8(seed: u64) -> CriterionOutcome {
    guarded(8, || {
        let mut rng = rng_from_seed(seed);
        let mut worst_ds = 0.0f64;
        let mut worst_evolve = 0.0f64;
        let mut worst_comp = 0.0f64;
        for d in [2, 3] {
            let sic = builtin_sic(d)?;
            for _ in 0..25 {
                let u = haar_unitary(d, &mut rng);
                let v = haar_unitary(d, &mut rng);
                let ru = unitary_transition(&sic, &u)?;
                let rv = unitary_transition(&sic, &v)?;
                let rvu = unitary_transition(&sic, &(&v * &u))?;
                for s in ru.row_sums().iter().chain(ru.column_sums()) {
                    worst_ds = worst_ds.max((s - 1.0).abs());
                }

                let rho = DensityMatrix::new(wishart_matrix(d, &mut rng))?;
                let p = state_to_probs(&rho, &sic)?;
                let evolved = evolve_probs(&p, &ru, d)?;
                let conjugated = DensityMatrix::new(&u * rho.matrix() * u.adjoint())?;
                let direct = state_to_probs(&conjugated, &sic)?;
                for i in 0..p.len() {
                    worst_evolve = worst_evolve.max((evolved[i] - direct[i]).abs());
                }

                let two_step = evolve_probs(&evolve_probs(&p, &ru, d)?, &rv, d)?;
                let one_step = evolve_probs(&p, &rvu, d)?;
                for i in 0..p.len() {
                    worst_comp = worst_comp.max((two_step[i] - one_step[i]).abs());
                }
            }
        }
        let pass = worst_ds < tol::EXACT && worst_evolve < tol::EXACT && worst_comp < tol::EXACT;
        Ok((pass, format!(
            "stochasticity {worst_ds:.2e}, evolution {worst_evolve:.2e}, composition {worst_comp:.2e}"
        )))
    })
}

fn c9(seed: u64) -> CriterionOutcome {
    guarded(9, || {
        let mut rng = rng_from_seed(seed);
        let mut pass = (sphere_radius_sq(2) - 1.0 / 12.0).abs() < 1e-15;
        let mut worst_sphere = 0.0f64;
        let mut zero_violations = 0usize;
        for d in 2..=5 {
            let sic = cached_sic(d, seed)?;
            let target = 2.0 / (d as f64 * (d as f64 + 1.0));
            for _ in 0..10_000 {
                let psi = haar_vector(d, &mut rng);
                let p = pure_state_probs(&psi, &sic)?;
                let sum_sq: f64 = p.iter().map(|x| x * x).sum();
                worst_sphere = worst_sphere.max((sum_sq - target).abs());
                if !zeros_audit(&p, d, tol::ZERO)?.pass {
                    zero_violations += 1;
                }
            }
        }
        pass &= worst_sphere < tol::VERIFY && zero_violations == 0;

        let mut worst_lambda = 0.0f64;
        for d in 2..=6 {
            let at = max_distant_gram(d, d)?;
            let past = max_distant_gram(d, d + 1)?;
            worst_lambda = worst_lambda
                .max((at.eigenvalues[0] - at.lambda0).abs())
                .max((past.eigenvalues[0] - past.lambda0).abs());
            pass &= at.psd && !past.psd;
        }
        pass &= worst_lambda < tol::EXACT;

        for d in 2..=5 {
            let poked = (1..d * d).any(|n| {
                nflat_min_distance(d, n).map(|r| r.pokes_through).unwrap_or(true)
            });
            pass &= poked == (d > 2);
        }
        Ok((pass, format!(
            "sphere deviation {worst_sphere:.2e}, zero violations {zero_violations}, lambda0 deviation {worst_lambda:.2e}"
        )))
    })
}

fn c10(seed: u64) -> CriterionOutcome {
    guarded(10, || {
        let mut pass = true;
        for d in 2u64..=100 {
            let params = solve_constants(2, d)?;
            pass &= params.n == d * d
                && params.alpha == BigRational::from_integer(BigInt::from(d + 1))
                && params.beta == BigRational::new(BigInt::from(1), BigInt::from(d));
        }
        for m0 in 2u64..=10 {
            let params = solve_constants(0, m0)?;
            pass &= params.n == m0
                && params.alpha == BigRational::from_integer(BigInt::from(1))
                && params.beta == BigRational::from_integer(BigInt::from(0));
        }
        let mut worst_cos = 0.0f64;
        for d in [2, 3, 4] {
            let sic = cached_sic(d, seed)?;
            let report = certainty_check(&sic, &computational_projectors(d))?;
            worst_cos = worst_cos.max((report.cos_theta_measured - 0.5).abs());
            pass &= report.pass;
        }
        pass &= worst_cos < tol::EXACT;
        Ok((pass, format!("cos-theta deviation {worst_cos:.2e}")))
    })
}

fn c11(seed: u64) -> CriterionOutcome {
    guarded(11, || {
        let mut rng = rng_from_seed(seed);
        let mut checked = 0usize;
        let mut valid = 0usize;
        for d in [2, 3] {
            let sic = builtin_sic(d)?;
            for _ in 0..1000 {
                let (_, p) = sample_state_sqrt(&sic, &mut rng);
                checked += 1;
                if validate_probs(&p, &sic, tol::PSD_FLOOR)?.is_valid() {
                    valid += 1;
                }
            }
        }
        Ok((valid == checked, format!("{valid}/{checked} samples valid")))
    })
}

fn c12(seed: u64) -> CriterionOutcome {
    guarded(12, || {
        let mut rng = rng_from_seed(seed);
        let mut checked = 0usize;
        let mut valid = 0usize;
        for d in [2, 3] {
            let sic = builtin_sic(d)?;
            for _ in 0..100 {
                let m = rng.random_range(2..=2 * d);
                let povm = Povm::new(d, random_povm(d, m, &mut rng))?;
                let r = conditional_matrix(&sic, &povm)?;
                for j in 1..=m {
                    let posterior = reciprocity_posterior(&r, j)?;
                    checked += 1;
                    if validate_probs(&posterior, &sic, tol::PSD_FLOOR)?.is_valid() {
                        valid += 1;
                    }
                }
            }
        }
        Ok((valid == checked, format!("{valid}/{checked} posteriors valid")))
    })
}

fn dispatch(id: usize, seed: u64) -> Option<CriterionOutcome> {
    Some(match id {
        1 => c1(seed),
        2 => c2(seed),
        3 => c3(seed),
        4 => c4(seed),
        5 => c5(seed),
        6 => c6(seed),
        7 => c7(seed),
        8 => c8(seed),
        9 => c9(seed),
        10 => c10(seed),
        11 => c11(seed),
        12 => c12(seed),
        _ => return None,
    })
}

/// Runs a single criterion by its 1-based id.
pub fn criterion(id: usize, seed: u64) -> Result<CriterionOutcome> {
    dispatch(id, seed).ok_or(SicError::IndexOutOfRange {
        index: id,
        len: CRITERIA,
    })
}

/// Runs the suite. Criterion 2 joins only when `include_slow` is set.
pub fn run(seed: u64, include_slow: bool) -> SelftestReport {
    let mut criteria = Vec::new();
    for id in 1..=CRITERIA {
        if id == 2 && !include_slow {
            continue;
        }
        criteria.push(dispatch(id, seed).expect("criterion id in range"));
    }
    let pass = criteria.iter().all(|c| c.pass);
    SelftestReport {
        seed,
        slow_included: include_slow,
        criteria,
        pass,
    }
}
