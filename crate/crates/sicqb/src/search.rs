//! Numerical search for SIC fiducials.
//!
//! Minimizes, over unit vectors ψ, the residual of the orbit overlap
//! condition. With z_ab = ⟨ψ|X^aZ^b|ψ⟩, every pairwise projector overlap of
//! the orbit equals some |z_ab|² with (a,b) ≠ (0,0), so the objective
//!
//! ```text
//! g(ψ) = Σ_{(a,b)≠(0,0)} (|z_ab|² - 1/(d+1))²
//! ```
//!
//! vanishes exactly at a fiducial and its square-rooted term maximum is the
//! orbit's worst overlap deviation. Minimization runs limited-memory BFGS on
//! the unit sphere (gradient projected to the tangent space, iterates
//! renormalized) with Armijo backtracking.
//!
//! Restarts decorrelate through fixed sub-seeds of the caller's seed, every
//! restart always runs, and the best result wins with ties broken by restart
//! index, so results are reproducible bit for bit for a given seed and
//! option set.

use crate::error::{Result, SicError};
use crate::linalg::CVector;
use crate::sic::{Fiducial, DEFAULT_MAX_D};
use crate::tol;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

/// Knobs for [`find_sic`]. Defaults are sized so dimensions through 7
/// converge in seconds.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Independent random starts; all of them run.
    pub restarts: usize,
    /// Iteration cap per restart.
    pub max_iters: usize,
    /// Target for the orbit's worst overlap deviation. The search stops a
    /// restart once the deviation falls below half this value.
    pub search_tol: f64,
    /// Largest dimension accepted.
    pub max_d: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iters: 4000,
            search_tol: tol::SEARCH,
            max_d: DEFAULT_MAX_D,
        }
    }
}

/// Multiplier for deriving per-restart sub-seeds (golden-ratio increment).
const SUBSEED_STRIDE: u64 = 0x9E3779B97F4A7C15;
/// L-BFGS memory length.
const MEMORY: usize = 8;
/// Armijo sufficient-decrease constant.
const ARMIJO_C1: f64 = 1e-4;
/// Step shrink factor during backtracking.
const BACKTRACK: f64 = 0.5;
/// Give up on a line search below this step length.
const MIN_STEP: f64 = 1e-20;

/// Searches for a fiducial vector in dimension `d` whose orbit under the
/// d² displacements is a SIC within `opts.search_tol`.
///
/// Runs `opts.restarts` seeded starts, keeps the lowest-residual result, and
/// returns it as a canonicalized [`Fiducial`]. Identical inputs give
/// identical outputs. Errors with [`SicError::SicNotFound`] carrying the best
/// residual when no restart reaches the target.
pub fn find_sic(d: usize, seed: u64, opts: &SearchOptions) -> Result<Fiducial> {
    if d < 2 {
        return Err(SicError::DimensionTooSmall { d });
    }
    if d > opts.max_d {
        return Err(SicError::DimensionTooLarge { d, max: opts.max_d });
    }

    let tables = DispTables::new(d);
    let stop_at = 0.5 * opts.search_tol;
    let mut best: Option<(f64, usize, CVector)> = None;

    for r in 0..opts.restarts {
        let subseed = seed.wrapping_add((r as u64 + 1).wrapping_mul(SUBSEED_STRIDE));
        let mut rng = ChaCha12Rng::seed_from_u64(subseed);
        let start = random_unit_vector(d, &mut rng);
        let (residual, psi) = minimize(start, &tables, opts.max_iters, stop_at);
        let better = match &best {
            None => true,
            Some((best_res, _, _)) => residual < *best_res,
        };
        if better {
            best = Some((residual, r, psi));
        }
    }

    let (residual, _, psi) = best.expect("at least one restart");
    if residual <= stop_at {
        let normalized = psi.unscale(psi.norm());
        Fiducial::new(normalized.iter().copied().collect())
    } else {
        Err(SicError::SicNotFound {
            d,
            restarts: opts.restarts,
            best_residual: residual,
        })
    }
}

/// Precomputed root-of-unity tables, so objective evaluations touch no
/// transcendental functions.
struct DispTables {
    d: usize,
    /// roots[k] = e^{2πik/d}
    roots: Vec<Complex64>,
    conj_roots: Vec<Complex64>,
    /// Target overlap 1/(d+1).
    c: f64,
}

impl DispTables {
    fn new(d: usize) -> Self {
        let roots: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64))
            .collect();
        let conj_roots = roots.iter().map(|z| z.conj()).collect();
        Self {
            d,
            roots,
            conj_roots,
            c: 1.0 / (d as f64 + 1.0),
        }
    }
}

fn random_unit_vector(d: usize, rng: &mut ChaCha12Rng) -> CVector {
    let v = CVector::from_fn(d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let n = v.norm();
    v.unscale(n)
}

/// Objective and worst overlap deviation at ψ (assumed unit).
fn eval_f(psi: &CVector, t: &DispTables) -> (f64, f64) {
    let d = t.d;
    let mut f = 0.0;
    let mut worst = 0.0_f64;
    for a in 0..d {
        for b in 0..d {
            if a == 0 && b == 0 {
                continue;
            }
            let mut z = Complex64::ZERO;
            for m in 0..d {
                let src = (m + d - a) % d;
                z += psi[m].conj() * t.roots[(b * src) % d] * psi[src];
            }
            let delta = z.norm_sqr() - t.c;
            f += delta * delta;
            worst = worst.max(delta.abs());
        }
    }
    (f, worst)
}

/// Objective, worst deviation, and the Euclidean gradient of the objective
/// with respect to the real and imaginary parts of ψ, packed as the complex
/// vector G with G_m = ∂g/∂Re ψ_m + i ∂g/∂Im ψ_m.
fn eval_fg(psi: &CVector, t: &DispTables) -> (f64, f64, CVector) {
    let d = t.d;
    let mut f = 0.0;
    let mut worst = 0.0_f64;
    let mut w = CVector::zeros(d);
    let mut dpsi = vec![Complex64::ZERO; d];
    for a in 0..d {
        for b in 0..d {
            if a == 0 && b == 0 {
                continue;
            }
            for (m, slot) in dpsi.iter_mut().enumerate() {
                let src = (m + d - a) % d;
                *slot = t.roots[(b * src) % d] * psi[src];
            }
            let mut z = Complex64::ZERO;
            for m in 0..d {
                z += psi[m].conj() * dpsi[m];
            }
            let delta = z.norm_sqr() - t.c;
            f += delta * delta;
            worst = worst.max(delta.abs());
            let zc = z.conj();
            for m in 0..d {
                // (D†ψ)_m = ω^{-bm} ψ_{m+a}; both derivative channels of
                // |z|² contribute.
                let adj = t.conj_roots[(b * m) % d] * psi[(m + a) % d];
                w[m] += (zc * dpsi[m] + z * adj).scale(2.0 * delta);
            }
        }
    }
    (f, worst, w.scale(2.0))
}

/// Dot product of the real 2d-dimensional representations.
fn re_dot(u: &CVector, v: &CVector) -> f64 {
    u.iter().zip(v.iter()).map(|(a, b)| (a.conj() * b).re).sum()
}

/// Projects an ambient gradient onto the tangent space of the sphere at x.
fn tangent(g: &CVector, x: &CVector) -> CVector {
    g - x.scale(re_dot(x, g))
}

/// L-BFGS descent on the unit sphere. Returns the best worst-deviation seen
/// and the iterate that achieved it.
fn minimize(start: CVector, t: &DispTables, max_iters: usize, stop_at: f64) -> (f64, CVector) {
    let mut x = start;
    let (mut fx, mut worst, g_full) = eval_fg(&x, t);
    let mut g = tangent(&g_full, &x);
    let mut best_worst = worst;
    let mut best_x = x.clone();

    let mut s_hist: Vec<CVector> = Vec::with_capacity(MEMORY);
    let mut y_hist: Vec<CVector> = Vec::with_capacity(MEMORY);

    for _ in 0..max_iters {
        if best_worst <= stop_at {
            break;
        }
        let p = lbfgs_direction(&g, &s_hist, &y_hist);
        let mut slope = re_dot(&g, &p);
        let p = if slope < 0.0 {
            p
        } else {
            slope = -re_dot(&g, &g);
            -g.clone()
        };
        if slope.abs() < 1e-300 {
            break;
        }

        let mut step = if s_hist.is_empty() {
            (1.0 / g.norm().max(1.0)).min(1.0)
        } else {
            1.0
        };
        let mut accepted = None;
        while step > MIN_STEP {
            let cand = {
                let y = &x + p.scale(step);
                y.unscale(y.norm())
            };
            let (fc, wc) = eval_f(&cand, t);
            if fc <= fx + ARMIJO_C1 * step * slope {
                accepted = Some((cand, fc, wc));
                break;
            }
            step *= BACKTRACK;
        }
        let Some((x_new, f_new, w_new)) = accepted else {
            break;
        };

        let (_, _, g_full_new) = eval_fg(&x_new, t);
        let g_new = tangent(&g_full_new, &x_new);
        let s = &x_new - &x;
        let y = &g_new - &g;
        let sy = re_dot(&s, &y);
        if sy > 1e-14 * s.norm() * y.norm() {
            if s_hist.len() == MEMORY {
                s_hist.remove(0);
                y_hist.remove(0);
            }
            s_hist.push(s);
            y_hist.push(y);
        }

        x = x_new;
        fx = f_new;
        worst = w_new;
        g = g_new;
        if worst < best_worst {
            best_worst = worst;
            best_x = x.clone();
        }
    }
    (best_worst, best_x)
}

/// Two-loop recursion; falls back to steepest descent with empty memory.
fn lbfgs_direction(g: &CVector, s_hist: &[CVector], y_hist: &[CVector]) -> CVector {
    if s_hist.is_empty() {
        return -g.clone();
    }
    let k = s_hist.len();
    let mut q = g.clone();
    let mut alpha = vec![0.0; k];
    let mut rho = vec![0.0; k];
    for i in (0..k).rev() {
        rho[i] = 1.0 / re_dot(&y_hist[i], &s_hist[i]);
        alpha[i] = rho[i] * re_dot(&s_hist[i], &q);
        q -= y_hist[i].scale(alpha[i]);
    }
    let last = k - 1;
    let gamma = re_dot(&s_hist[last], &y_hist[last]) / re_dot(&y_hist[last], &y_hist[last]);
    let mut r = q.scale(gamma);
    for i in 0..k {
        let beta = rho[i] * re_dot(&y_hist[i], &r);
        r += s_hist[i].scale(alpha[i] - beta);
    }
    -r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sic::{fiducial_orbit, verify_sic};

    #[test]
    fn finds_qubit_sic_and_orbit_verifies() {
        let f = find_sic(2, 0, &SearchOptions::default()).unwrap();
        let report = verify_sic(&fiducial_orbit(&f), tol::SEARCH);
        assert!(report.pass, "residuals: {report:?}");
    }

    #[test]
    fn finds_qutrit_sic() {
        let f = find_sic(3, 0, &SearchOptions::default()).unwrap();
        let report = verify_sic(&fiducial_orbit(&f), tol::SEARCH);
        assert!(report.pass, "residuals: {report:?}");
    }

    #[test]
    fn same_seed_gives_identical_amplitudes() {
        let opts = SearchOptions::default();
        let a = find_sic(2, 42, &opts).unwrap();
        let b = find_sic(2, 42, &opts).unwrap();
        assert_eq!(a.amplitudes().len(), b.amplitudes().len());
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes().iter()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn rejects_out_of_range_dimensions() {
        let opts = SearchOptions::default();
        assert!(matches!(
            find_sic(1, 0, &opts),
            Err(SicError::DimensionTooSmall { d: 1 })
        ));
        assert!(matches!(
            find_sic(13, 0, &opts),
            Err(SicError::DimensionTooLarge { d: 13, max: 12 })
        ));
    }

    #[test]
    fn reports_not_found_when_budget_is_hopeless() {
        let opts = SearchOptions {
            restarts: 1,
            max_iters: 2,
            search_tol: 1e-300,
            ..SearchOptions::default()
        };
        match find_sic(4, 0, &opts) {
            Err(SicError::SicNotFound {
                d: 4,
                restarts: 1,
                best_residual,
            }) => assert!(best_residual > 0.0),
            other => panic!("expected SicNotFound, got {other:?}"),
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let t = DispTables::new(3);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let x = random_unit_vector(3, &mut rng);
        let (_, _, g) = eval_fg(&x, &t);
        let h = 1e-6;
        for m in 0..3 {
            for part in 0..2 {
                let mut xp = x.clone();
                let mut xm = x.clone();
                let bump = if part == 0 {
                    Complex64::new(h, 0.0)
                } else {
                    Complex64::new(0.0, h)
                };
                xp[m] += bump;
                xm[m] -= bump;
                let (fp, _) = eval_f(&xp, &t);
                let (fm, _) = eval_f(&xm, &t);
                let fd = (fp - fm) / (2.0 * h);
                let an = if part == 0 { g[m].re } else { g[m].im };
                assert!(
                    (fd - an).abs() < 1e-5 * (1.0 + an.abs()),
                    "component {m} part {part}: fd {fd} vs analytic {an}"
                );
            }
        }
    }
}
