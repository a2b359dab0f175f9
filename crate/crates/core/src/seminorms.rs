//! Supremum functionals over the disk: Bloch, harmonic Bloch and Bloch-type
//! seminorms, the quasiregularity constant and the dilatation bound.
//!
//! Every supremum is estimated by a polar grid scan followed by Nelder–Mead
//! refinement from the best grid local maxima. The result is a lower bound
//! on the true supremum.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::AnalyticFunction;
use crate::disk::{DiskPoint, BOUNDARY_MARGIN};
use crate::error::{Error, Result};
use crate::harmonic::{quasiregularity_pointwise, HarmonicMap};

const MAX_SIMPLEX_ITERATIONS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupConfig {
    pub n_radial: usize,
    pub n_angular: usize,
    pub r_max: f64,
    pub refine_top: usize,
    pub refine_tol: f64,
}

impl Default for SupConfig {
    fn default() -> Self {
        SupConfig {
            n_radial: 64,
            n_angular: 128,
            r_max: 1.0 - 1e-9,
            refine_top: 5,
            refine_tol: 1e-8,
        }
    }
}

impl SupConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_radial < 8 || self.n_angular < 8 {
            return Err(Error::Config(format!(
                "grid must be at least 8x8, got {}x{}",
                self.n_radial, self.n_angular
            )));
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0 - BOUNDARY_MARGIN) {
            return Err(Error::Config(format!("r_max = {} must lie in (0, 1)", self.r_max)));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::Config(format!("refine_tol = {} must be positive", self.refine_tol)));
        }
        Ok(())
    }

    /// Same configuration with the grid resolution multiplied by `factor`.
    pub fn finer(&self, factor: usize) -> SupConfig {
        SupConfig {
            n_radial: self.n_radial * factor,
            n_angular: self.n_angular * factor,
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupEstimate {
    pub value: f64,
    pub argmax: DiskPoint,
    pub grid_value: f64,
    #[serde(skip)]
    pub refined: bool,
    /// Spread of the final refinement simplex, floored at `refine_tol`.
    pub tolerance: f64,
}

impl SupEstimate {
    /// `tolerance / value`, or zero for a vanishing supremum.
    pub fn relative_tolerance(&self) -> f64 {
        if self.value > 0.0 {
            self.tolerance / self.value
        } else {
            0.0
        }
    }
}

fn checked(value: f64, at: Complex64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { at, value })
    }
}

pub fn sup_over_disk<F>(objective: F, cfg: &SupConfig) -> Result<SupEstimate>
where
    F: Fn(DiskPoint) -> f64,
{
    try_sup_over_disk(|z| Ok(objective(z)), cfg)
}

/// [`sup_over_disk`] for objectives that may reject a point.
pub fn try_sup_over_disk<F>(objective: F, cfg: &SupConfig) -> Result<SupEstimate>
where
    F: Fn(DiskPoint) -> Result<f64>,
{
    cfg.validate()?;
    let eval = |z: Complex64| -> Result<f64> { checked(objective(DiskPoint::new(z)?)?, z) };

    let (nr, na) = (cfg.n_radial, cfg.n_angular);
    let radius = |i: usize| cfg.r_max * i as f64 / (nr - 1) as f64;
    let angle = |j: usize| TAU * j as f64 / na as f64;
    let point = |i: usize, j: usize| Complex64::from_polar(radius(i), angle(j));

    let origin_value = eval(Complex64::new(0.0, 0.0))?;
    // ring i (1-based) stored at rows[(i - 1) * na + j]
    let mut rows = Vec::with_capacity((nr - 1) * na);
    for i in 1..nr {
        for j in 0..na {
            rows.push(eval(point(i, j))?);
        }
    }
    let at = |i: usize, j: usize| -> f64 {
        if i == 0 {
            origin_value
        } else {
            rows[(i - 1) * na + j % na]
        }
    };

    let mut best_value = origin_value;
    let mut best_point = Complex64::new(0.0, 0.0);
    for i in 1..nr {
        for j in 0..na {
            if at(i, j) > best_value {
                best_value = at(i, j);
                best_point = point(i, j);
            }
        }
    }
    let grid_value = best_value;

    // seeds: grid local maxima by decreasing value
    let mut seeds: Vec<(f64, Complex64)> = Vec::new();
    if (0..na).all(|j| origin_value >= at(1, j)) {
        seeds.push((origin_value, Complex64::new(0.0, 0.0)));
    }
    for i in 1..nr {
        for j in 0..na {
            let v = at(i, j);
            let outer_ok = i + 1 >= nr || v >= at(i + 1, j);
            if v >= at(i - 1, j) && outer_ok && v >= at(i, j + 1) && v >= at(i, j + na - 1) {
                seeds.push((v, point(i, j)));
            }
        }
    }
    seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
    seeds.truncate(cfg.refine_top);

    let step = 0.5 * cfg.r_max / (nr - 1) as f64;
    let mut tolerance = cfg.refine_tol;
    let mut refined = false;
    for &(_, seed) in &seeds {
        let run = nelder_mead_max(&eval, seed, step, cfg)?;
        if run.value > best_value {
            best_value = run.value;
            best_point = run.point;
            tolerance = run.spread.max(cfg.refine_tol);
            refined = true;
        }
    }

    Ok(SupEstimate {
        value: best_value,
        argmax: DiskPoint::new(best_point)?,
        grid_value,
        refined,
        tolerance,
    })
}

struct SimplexRun {
    value: f64,
    point: Complex64,
    spread: f64,
}

fn clamp_to(z: Complex64, r_max: f64) -> Complex64 {
    let r = z.norm();
    if r > r_max {
        z * (r_max / r)
    } else {
        z
    }
}

/// Two-dimensional Nelder–Mead maximization in (Re z, Im z), with trial
/// points projected radially onto `|z| ≤ r_max`.
fn nelder_mead_max<F>(eval: &F, start: Complex64, step: f64, cfg: &SupConfig) -> Result<SimplexRun>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let r_max = cfg.r_max;
    let mut simplex: Vec<(Complex64, f64)> = Vec::with_capacity(3);
    for offset in [
        Complex64::new(0.0, 0.0),
        Complex64::new(step, 0.0),
        Complex64::new(0.0, step),
    ] {
        let p = clamp_to(start + offset, r_max);
        simplex.push((p, eval(p)?));
    }

    for _ in 0..MAX_SIMPLEX_ITERATIONS {
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let spread = simplex[0].1 - simplex[2].1;
        let diameter = (simplex[0].0 - simplex[1].0)
            .norm()
            .max((simplex[0].0 - simplex[2].0).norm());
        if spread <= cfg.refine_tol && diameter <= 1e-6 || diameter <= 1e-13 {
            break;
        }

        let centroid = (simplex[0].0 + simplex[1].0) * 0.5;
        let worst = simplex[2];
        let reflected = clamp_to(centroid + (centroid - worst.0), r_max);
        let fr = eval(reflected)?;
        if fr > simplex[0].1 {
            let expanded = clamp_to(centroid + (centroid - worst.0) * 2.0, r_max);
            let fe = eval(expanded)?;
            simplex[2] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr > simplex[1].1 {
            simplex[2] = (reflected, fr);
            continue;
        }
        let contracted = if fr > worst.1 {
            clamp_to(centroid + (reflected - centroid) * 0.5, r_max)
        } else {
            centroid + (worst.0 - centroid) * 0.5
        };
        let fc = eval(contracted)?;
        if fc > worst.1.max(fr) {
            simplex[2] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            let p = best + (vertex.0 - best) * 0.5;
            *vertex = (p, eval(p)?);
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(SimplexRun {
        value: simplex[0].1,
        point: simplex[0].0,
        spread: simplex[0].1 - simplex[2].1,
    })
}

/// `‖h‖_B = sup (1 − |z|²)|h'(z)|`
pub fn bloch_seminorm<F: AnalyticFunction + ?Sized>(h: &F, cfg: &SupConfig) -> Result<SupEstimate> {
    sup_over_disk(|z| z.weight() * h.deriv(z.value()).norm(), cfg)
}

/// `|h(0)| + ‖h‖_B`
pub fn bloch_norm<F: AnalyticFunction + ?Sized>(h: &F, cfg: &SupConfig) -> Result<f64> {
    Ok(h.eval(Complex64::new(0.0, 0.0)).norm() + bloch_seminorm(h, cfg)?.value)
}

/// `‖f‖_{B_h} = sup (1 − |z|²)Λ_f(z)`
pub fn harmonic_bloch_seminorm(f: &HarmonicMap, cfg: &SupConfig) -> Result<SupEstimate> {
    sup_over_disk(|z| z.weight() * f.big_lambda(z.value()), cfg)
}

/// `‖f‖_{B_h*} = sup (1 − |z|²)√|J_f(z)|`
pub fn bloch_type_seminorm(f: &HarmonicMap, cfg: &SupConfig) -> Result<SupEstimate> {
    sup_over_disk(|z| z.weight() * f.jacobian(z.value()).abs().sqrt(), cfg)
}

/// `K(f) = sup Λ_f/λ_f`; fails on any sampled point where `J_f ≤ 0`.
pub fn quasiregularity_constant(f: &HarmonicMap, cfg: &SupConfig) -> Result<f64> {
    Ok(try_sup_over_disk(|z| quasiregularity_pointwise(f, z), cfg)?.value)
}

/// `max |g'/h'|` over `n_boundary` points of the circle `|z| = r_max`. By the
/// maximum modulus principle this bounds `|ω|` on the disk of radius `r_max`.
pub fn dilatation_sup(f: &HarmonicMap, n_boundary: usize, r_max: f64) -> Result<f64> {
    if n_boundary == 0 {
        return Err(Error::Config("n_boundary must be positive".into()));
    }
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(Error::domain("r_max", r_max, "(0, 1)"));
    }
    let mut max = 0.0f64;
    for j in 0..n_boundary {
        let z = Complex64::from_polar(r_max, TAU * j as f64 / n_boundary as f64);
        let hp = f.h.deriv(z);
        if hp.norm() < 1e-14 {
            return Err(Error::VanishingDerivative {
                at: z,
                modulus: hp.norm(),
            });
        }
        max = max.max(f.g.deriv(z).norm() / hp.norm());
    }
    Ok(max)
}

/// Interior-grid cross-check for [`dilatation_sup`].
pub fn dilatation_sup_interior(f: &HarmonicMap, cfg: &SupConfig) -> Result<SupEstimate> {
    try_sup_over_disk(
        |z| {
            let hp = f.h.deriv(z.value());
            if hp.norm() < 1e-14 {
                return Err(Error::VanishingDerivative {
                    at: z.value(),
                    modulus: hp.norm(),
                });
            }
            Ok(f.g.deriv(z.value()).norm() / hp.norm())
        },
        cfg,
    )
}
