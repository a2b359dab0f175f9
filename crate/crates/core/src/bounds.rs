//! Explicit Lipschitz constants and the scalar inequalities behind them.
//!
//! The base constant `c1` is the minimum of
//! `ψ(r) = (1 + r²/9) / (r(1 − r²))` on `(0, 1)`. It bounds the weighted
//! displacement `(1 − |ζ|²)|G'(ζ) − G'(0)| ≤ c1·|ζ|·‖G‖_B` for `|ζ| ≤ 1/3`.
//! The harmonic constants follow from it:
//!
//! * `c2 = 2·c1 + 1/3` dominates `|ζ|² + 2c1|ζ|` for `|ζ| ≤ 1/3`, and the
//!   large-distance case only needs `3|ζ|`;
//! * `c3 = c1 + 1` for the Jacobian functional, normalized by `K + 1`.
//!   Only `c1 + 1/6` is needed for `|ζ| ≤ 1/3`; both are reported.
//!
//! Both theorems split at `|ζ| = 1/3`; for `|ζ| > 1/3` the bound `3|ζ| > 1`
//! is what is certified.

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::Serialize;

use crate::analytic::{compose_with_mobius, AnalyticFunction};
use crate::disk::DiskPoint;
use crate::error::{Error, Result};

/// Constant of the earlier analytic-only inequality, taken as given.
pub const THEOREM_A_CONSTANT: f64 = 3.31;

/// Lower end of the search interval for `ψ`; keeps clear of the pole at 0.
const PSI_LOWER: f64 = 1e-6;
const PSI_UPPER: f64 = 1.0 - 1e-6;
const BRACKET_INTERVALS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantSet {
    pub c1: f64,
    pub r_star: f64,
    pub c2: f64,
    pub c3: f64,
    /// Smallest `c` with `c1(K+1)|ζ| + |ζ|² ≤ c(K+1)|ζ|` for all `|ζ| ≤ 1/3`, `K ≥ 1`.
    pub c3_tight: f64,
    pub theorem_a_constant: f64,
}

pub fn psi(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain("r", r, "(0, 1)"));
    }
    Ok(psi_unchecked(r))
}

#[inline]
fn psi_unchecked(r: f64) -> f64 {
    (1.0 + r * r / 9.0) / (r * (1.0 - r * r))
}

/// Sign of `ψ(a) − ψ(b)` without cancellation:
/// `ψ(a) − ψ(b) = (b − a)(1 − a² − ab − b² − ab/9 − a²b²/9) / (D(a)D(b))`
/// with `D(r) = r(1 − r²) > 0`.
fn psi_cmp(a: f64, b: f64) -> Ordering {
    let factor = 1.0 - a * a - a * b - b * b - a * b / 9.0 - a * a * b * b / 9.0;
    let diff = (b - a) * factor;
    diff.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

/// Golden-section search for the minimum of a unimodal function on `[a, b]`,
/// driven by a comparison `cmp(x, y) = f(x).cmp(f(y))`. Returns the midpoint of
/// the final bracket once it is narrower than `tol`.
pub fn golden_section_min_by<C>(cmp: C, mut a: f64, mut b: f64, tol: f64) -> f64
where
    C: Fn(f64, f64) -> Ordering,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    while b - a > tol {
        if cmp(x1, x2) == Ordering::Less {
            b = x2;
            x2 = x1;
            x1 = b - INV_PHI * (b - a);
        } else {
            a = x1;
            x1 = x2;
            x2 = a + INV_PHI * (b - a);
        }
        if x1 >= x2 {
            // bracket exhausted at floating-point resolution
            break;
        }
    }
    0.5 * (a + b)
}

/// Golden-section search on function values.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    golden_section_min_by(|x, y| f(x).total_cmp(&f(y)), a, b, tol)
}

/// Minimizer and minimum of `ψ`.
///
/// A 16-interval scan brackets the minimum before golden-section search, so
/// the pole at `r → 0` never steers the search.
pub fn minimize_psi(tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "(0, ∞)"));
    }
    let nodes: Vec<f64> = (0..=BRACKET_INTERVALS)
        .map(|i| PSI_LOWER + (PSI_UPPER - PSI_LOWER) * i as f64 / BRACKET_INTERVALS as f64)
        .collect();
    let best = (0..nodes.len())
        .min_by(|&i, &j| psi_cmp(nodes[i], nodes[j]))
        .unwrap_or(0);
    let lo = nodes[best.saturating_sub(1)];
    let hi = nodes[(best + 1).min(BRACKET_INTERVALS)];
    let r_star = golden_section_min_by(psi_cmp, lo, hi, tol);
    Ok((r_star, psi_unchecked(r_star)))
}

pub fn constant_set(tol: f64) -> Result<ConstantSet> {
    let (r_star, c1) = minimize_psi(tol)?;
    Ok(ConstantSet {
        c1,
        r_star,
        c2: 2.0 * c1 + 1.0 / 3.0,
        c3: c1 + 1.0,
        c3_tight: c1 + 1.0 / 6.0,
        theorem_a_constant: THEOREM_A_CONSTANT,
    })
}

/// Constants at `tol = 1e-10`, computed once.
pub fn constants() -> &'static ConstantSet {
    static CONSTANTS: OnceLock<ConstantSet> = OnceLock::new();
    CONSTANTS.get_or_init(|| constant_set(1e-10).expect("positive tolerance"))
}

/// Mean-value bound on `(1 − |w|²)²|G''(w)| / ‖G‖_B` for one circle radius `r`:
/// `(1 + r²|w|²) / (r(1 − r²))`.
pub fn second_derivative_bound(r: f64, w_mod: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain("r", r, "(0, 1)"));
    }
    if !(0.0..1.0).contains(&w_mod) {
        return Err(Error::domain("w_mod", w_mod, "[0, 1)"));
    }
    Ok((1.0 + r * r * w_mod * w_mod) / (r * (1.0 - r * r)))
}

/// `((1 − t²)·ln((1 + t)/(1 − t)), 2t)`; the first never exceeds the second.
pub fn log_displacement_inequality(t: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::domain("t", t, "[0, 1)"));
    }
    // ln((1+t)/(1-t)) = 2·atanh(t), accurate for small t
    Ok(((1.0 - t * t) * 2.0 * t.atanh(), 2.0 * t))
}

/// Weighted displacement of `G = h ∘ φ_w` against its bound:
/// `((1 − |ζ|²)|G'(ζ) − G'(0)|, c1·|ζ|·‖h‖_B)` for `|ζ| ≤ 1/3`.
pub fn lemma23_pair<F: AnalyticFunction>(
    h: &F,
    w: DiskPoint,
    zeta: DiskPoint,
    h_seminorm: f64,
) -> Result<(f64, f64)> {
    let r = zeta.modulus();
    if r > 1.0 / 3.0 + 1e-15 {
        return Err(Error::domain("|zeta|", r, "[0, 1/3]"));
    }
    let g = compose_with_mobius(h, w);
    let origin = DiskPoint::ORIGIN.value();
    let lhs = zeta.weight() * (g.deriv(zeta.value()) - g.deriv(origin)).norm();
    Ok((lhs, constants().c1 * r * h_seminorm))
}
