//! Numerical certification of the pseudo-hyperbolic Lipschitz inequalities.
//!
//! For a harmonic map `f` the weighted functionals
//! `F(z) = (1 − |z|²)Λ_f(z)` and `F*(z) = (1 − |z|²)√J_f(z)` satisfy
//!
//! ```text
//! |F(z)  − F(w)|  ≤ c2 ·        ρ(z, w) ‖f‖_{B_h}
//! |F*(z) − F*(w)| ≤ c3 · (K+1) · ρ(z, w) ‖f‖_{B_h*}   (f K-quasiregular)
//! ```
//!
//! and for analytic `f` the first holds with `3.31` in place of `c2`. The
//! quotient functions below divide the left side by everything except the
//! constant, so a certified pair satisfies `quotient ≤ constant`.

pub mod campaign;
pub mod generate;
pub mod sharpness;

pub use campaign::{run_campaign, CampaignConfig, CampaignKind, CampaignReport, TrialRecord};
pub use generate::{gen_polynomial, gen_quasiregular};
pub use sharpness::{sharpness_search, SharpnessConfig, SharpnessKind};

use crate::analytic::{AnalyticFunction, LogFixture};
use crate::disk::{pseudo_distance, DiskPoint};
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;

/// `(1 − |z|²)Λ_f(z)`
pub fn weighted_lambda(f: &HarmonicMap, z: DiskPoint) -> f64 {
    z.weight() * f.big_lambda(z.value())
}

/// `(1 − |z|²)√J_f(z)`; fails where `J_f ≤ 0`.
pub fn weighted_sqrt_jacobian(f: &HarmonicMap, z: DiskPoint) -> Result<f64> {
    let jacobian = f.jacobian(z.value());
    if jacobian <= 0.0 {
        return Err(Error::NotSensePreserving {
            at: z.value(),
            jacobian,
        });
    }
    Ok(z.weight() * jacobian.sqrt())
}

/// `|F(z) − F(w)| / (ρ(z, w)·‖f‖_{B_h})`; bounded by `c2`.
pub fn theorem1_quotient(f: &HarmonicMap, norm_bh: f64, z: DiskPoint, w: DiskPoint) -> Result<f64> {
    if !(norm_bh > 0.0) {
        return Err(Error::domain("norm_bh", norm_bh, "(0, ∞)"));
    }
    let rho = pseudo_distance(z, w);
    if rho == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok((weighted_lambda(f, z) - weighted_lambda(f, w)).abs() / (rho * norm_bh))
}

/// `|F*(z) − F*(w)| / ((K + 1)·ρ(z, w)·‖f‖_{B_h*})`; bounded by `c3`.
pub fn theorem2_quotient(
    f: &HarmonicMap,
    norm_bhstar: f64,
    big_k: f64,
    z: DiskPoint,
    w: DiskPoint,
) -> Result<f64> {
    if !(norm_bhstar > 0.0) {
        return Err(Error::domain("norm_bhstar", norm_bhstar, "(0, ∞)"));
    }
    if !(big_k >= 1.0) {
        return Err(Error::domain("K", big_k, "[1, ∞)"));
    }
    let rho = pseudo_distance(z, w);
    if rho == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let lhs = (weighted_sqrt_jacobian(f, z)? - weighted_sqrt_jacobian(f, w)?).abs();
    Ok(lhs / ((big_k + 1.0) * rho * norm_bhstar))
}

/// Difference quotient of `log(1 − z²)` between `x` and `x + t` on the real
/// axis, paired with the reference growth `1/(1 − x)`.
pub fn non_lipschitz_witness(x: f64, t: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain("x", x, "(0, 1)"));
    }
    if !(t > 0.0 && x + t < 1.0) {
        return Err(Error::domain("t", t, "(0, 1 − x)"));
    }
    let a = LogFixture.eval(num_complex::Complex64::new(x, 0.0));
    let b = LogFixture.eval(num_complex::Complex64::new(x + t, 0.0));
    Ok(((a - b).norm() / t, 1.0 / (1.0 - x)))
}
