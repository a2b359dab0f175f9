//! Adversarial search for large quotients.
//!
//! Hill climbing over (function, z, w) from seeded restarts of fixed length.
//! Whenever a restart finds a new best, the quotient is recomputed with a
//! norm estimated on a doubled grid and the larger of the two norm estimates
//! is kept, so the reported maximum is never inflated by a coarse norm.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::Polynomial;
use crate::bounds::{constants, THEOREM_A_CONSTANT};
use crate::disk::{pseudo_distance, DiskPoint, MobiusTransform};
use crate::error::{Error, Result};
use crate::harmonic::{HarmonicMap, MapSpec};
use crate::seminorms::{SupConfig, SupEstimate};
use crate::verify::campaign::{better, random_analytic, sample_pair, stratum_for, CampaignKind, Functional, SAMPLE_RADIUS};
use crate::verify::generate::{
    assemble_quasiregular, dominate_constant_term, random_polynomial, stream_rng, unimodular,
};

pub const RESTART_LENGTH: usize = 100;
pub const MIN_BUDGET: usize = RESTART_LENGTH;
const POINT_MOVE_PROBABILITY: f64 = 0.7;
const MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpnessKind {
    Theorem1,
    /// Analytic maps only.
    TheoremA,
    Theorem2,
}

impl SharpnessKind {
    pub const ALL: [SharpnessKind; 3] = [SharpnessKind::Theorem1, SharpnessKind::TheoremA, SharpnessKind::Theorem2];

    pub fn name(self) -> &'static str {
        match self {
            SharpnessKind::Theorem1 => "theorem1",
            SharpnessKind::TheoremA => "theorem_a",
            SharpnessKind::Theorem2 => "theorem2",
        }
    }

    pub fn bound(self) -> f64 {
        match self {
            SharpnessKind::Theorem1 => constants().c2,
            SharpnessKind::TheoremA => THEOREM_A_CONSTANT,
            SharpnessKind::Theorem2 => constants().c3,
        }
    }

    fn campaign_kind(self) -> CampaignKind {
        match self {
            SharpnessKind::Theorem1 => CampaignKind::Theorem1,
            SharpnessKind::TheoremA => CampaignKind::TheoremA,
            SharpnessKind::Theorem2 => CampaignKind::Theorem2,
        }
    }

    fn functional(self) -> Functional {
        match self {
            SharpnessKind::Theorem2 => Functional::SqrtJacobian,
            _ => Functional::Lambda,
        }
    }
}

impl fmt::Display for SharpnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SharpnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SharpnessKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown sharpness kind '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessConfig {
    pub kind: SharpnessKind,
    pub seed: u64,
    /// Total number of evaluated candidates.
    pub budget: usize,
    pub sup: SupConfig,
}

impl SharpnessConfig {
    pub fn new(kind: SharpnessKind, seed: u64, budget: usize) -> Self {
        SharpnessConfig {
            kind,
            seed,
            budget,
            sup: SupConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessWitness {
    pub restart: usize,
    pub function_spec: Option<MapSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dilatation: Option<f64>,
    pub z: DiskPoint,
    pub w: DiskPoint,
    pub rho: f64,
    pub quotient: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestartSummary {
    pub restart: usize,
    pub evaluations: usize,
    pub quotient: f64,
    pub rho: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub kind: SharpnessKind,
    pub seed: u64,
    pub budget: usize,
    pub bound: f64,
    /// Largest quotient found, before normalization by the bound.
    pub max_raw_quotient: f64,
    /// `max_raw_quotient / bound`
    pub max_quotient: f64,
    pub best: Option<SharpnessWitness>,
    pub restarts: Vec<RestartSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl SharpnessReport {
    pub fn without_timing(&self) -> SharpnessReport {
        SharpnessReport {
            runtime_ms: None,
            ..self.clone()
        }
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for r in &self.restarts {
            writer.serialize(r)?;
        }
        writer.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Family {
    Harmonic { h: Polynomial, g: Polynomial },
    Quasiregular { h_prime: Polynomial, k: f64, rotation: Complex64, exponent: u32 },
}

#[derive(Clone, Debug)]
struct State {
    family: Family,
    z: DiskPoint,
    w: DiskPoint,
}

impl State {
    fn map(&self) -> (HarmonicMap, f64, Option<f64>) {
        match &self.family {
            Family::Harmonic { h, g } => (HarmonicMap::new(h.clone(), g.clone()), 1.0, None),
            Family::Quasiregular { h_prime, k, rotation, exponent } => {
                let s = assemble_quasiregular(h_prime.clone(), *k, *rotation, *exponent);
                (s.map, s.big_k + 1.0, Some(*k))
            }
        }
    }
}

struct Scored {
    state: State,
    map: HarmonicMap,
    factor: f64,
    norm: SupEstimate,
    lhs: f64,
    rho: f64,
}

impl Scored {
    fn quotient(&self) -> f64 {
        self.lhs / (self.rho * self.norm.value * self.factor)
    }
}

struct Searcher<'a> {
    cfg: &'a SharpnessConfig,
    functional: Functional,
    kind: CampaignKind,
}

impl Searcher<'_> {
    fn norm(&self, map: &HarmonicMap, sup: &SupConfig) -> Result<SupEstimate> {
        let est = self.functional.seminorm(self.kind, map, sup)?;
        if est.value > 0.0 {
            Ok(est)
        } else {
            Err(Error::domain("seminorm", est.value, "(0, ∞)"))
        }
    }

    fn lhs(&self, map: &HarmonicMap, z: DiskPoint, w: DiskPoint) -> Result<(f64, f64)> {
        let rho = pseudo_distance(z, w);
        if rho == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        let lhs = (self.functional.weighted(map, z)? - self.functional.weighted(map, w)?).abs();
        Ok((lhs, rho))
    }

    fn score(&self, state: State, norm: Option<SupEstimate>) -> Result<Scored> {
        let (map, factor, _) = state.map();
        let norm = match norm {
            Some(n) => n,
            None => self.norm(&map, &self.cfg.sup)?,
        };
        let (lhs, rho) = self.lhs(&map, state.z, state.w)?;
        Ok(Scored { state, map, factor, norm, lhs, rho })
    }

    fn initial<R: Rng + ?Sized>(&self, rng: &mut R, restart: usize) -> Option<State> {
        let family = match self.cfg.kind {
            SharpnessKind::TheoremA => Family::Harmonic {
                h: random_analytic(rng, MAX_DEGREE),
                g: Polynomial::zero(),
            },
            SharpnessKind::Theorem1 => Family::Harmonic {
                h: random_analytic(rng, MAX_DEGREE),
                g: random_analytic(rng, MAX_DEGREE),
            },
            SharpnessKind::Theorem2 => {
                let degree = rng.gen_range(0..MAX_DEGREE);
                let raw = random_polynomial(rng, degree, 1.0);
                Family::Quasiregular {
                    h_prime: dominate_constant_term(&raw)?,
                    k: rng.gen_range(0.05..0.95),
                    rotation: unimodular(rng),
                    exponent: rng.gen_range(0..=2u32),
                }
            }
        };
        let (z, w) = sample_pair(rng, stratum_for(restart as u64));
        Some(State { family, z, w })
    }

    fn perturb_point<R: Rng + ?Sized>(rng: &mut R, p: DiskPoint) -> Option<DiskPoint> {
        let step = 10f64.powf(rng.gen_range(-4.0..-0.5));
        let eps = Complex64::from_polar(step * rng.gen::<f64>(), rng.gen_range(0.0..std::f64::consts::TAU));
        let moved = MobiusTransform::new(p).apply(eps);
        let q = DiskPoint::new(moved).ok()?;
        (q.modulus() <= SAMPLE_RADIUS).then_some(q)
    }

    fn perturb_coeffs<R: Rng + ?Sized>(rng: &mut R, p: &Polynomial) -> Polynomial {
        let mut coeffs = p.coeffs().to_vec();
        let j = rng.gen_range(0..coeffs.len());
        let s = 10f64.powf(rng.gen_range(-3.0..0.0)) / (j + 1) as f64;
        coeffs[j] += Complex64::new(rng.gen_range(-s..=s), rng.gen_range(-s..=s));
        Polynomial::new(coeffs)
    }

    fn propose<R: Rng + ?Sized>(&self, rng: &mut R, s: &State) -> Option<(State, bool)> {
        let mut next = s.clone();
        if rng.gen_bool(POINT_MOVE_PROBABILITY) {
            if rng.gen_bool(0.5) {
                next.z = Self::perturb_point(rng, s.z)?;
            } else {
                next.w = Self::perturb_point(rng, s.w)?;
            }
            return Some((next, false));
        }
        next.family = match &s.family {
            Family::Harmonic { h, g } => {
                if matches!(self.cfg.kind, SharpnessKind::TheoremA) || rng.gen_bool(0.5) {
                    Family::Harmonic { h: Self::perturb_coeffs(rng, h), g: g.clone() }
                } else {
                    Family::Harmonic { h: h.clone(), g: Self::perturb_coeffs(rng, g) }
                }
            }
            Family::Quasiregular { h_prime, k, rotation, exponent } => {
                if rng.gen_bool(0.25) {
                    let k = (k + rng.gen_range(-0.05..=0.05)).clamp(0.01, 0.99);
                    Family::Quasiregular { h_prime: h_prime.clone(), k, rotation: *rotation, exponent: *exponent }
                } else {
                    let candidate = Self::perturb_coeffs(rng, h_prime);
                    let tail: f64 = candidate.coeffs().iter().skip(1).map(|c| c.norm()).sum();
                    if candidate.coeffs()[0].norm() < 1.25 * tail {
                        return None;
                    }
                    Family::Quasiregular { h_prime: candidate, k: *k, rotation: *rotation, exponent: *exponent }
                }
            }
        };
        Some((next, true))
    }

    /// Quotient with the larger of the coarse and doubled-grid norm estimates.
    fn refined_quotient(&self, s: &Scored) -> Result<f64> {
        let fine = self.norm(&s.map, &self.cfg.sup.finer(2))?;
        let norm = better(s.norm, fine);
        Ok(s.lhs / (s.rho * norm.value * s.factor))
    }

    fn restart(&self, restart: usize, evaluations: usize) -> (RestartSummary, Option<SharpnessWitness>) {
        let mut rng = stream_rng(self.cfg.seed, restart as u64);
        let mut best_refined: Option<SharpnessWitness> = None;
        let mut used = 0;
        let mut current: Option<Scored> = None;
        while used < evaluations {
            used += 1;
            let candidate = match &current {
                None => self.initial(&mut rng, restart).and_then(|s| self.score(s, None).ok()),
                Some(cur) => self.propose(&mut rng, &cur.state).and_then(|(next, fresh_norm)| {
                    self.score(next, if fresh_norm { None } else { Some(cur.norm) }).ok()
                }),
            };
            let Some(candidate) = candidate else { continue };
            let q = candidate.quotient();
            if !q.is_finite() || current.as_ref().is_some_and(|c| q <= c.quotient()) {
                continue;
            }
            if let Ok(refined) = self.refined_quotient(&candidate) {
                if best_refined.as_ref().is_none_or(|b| refined > b.quotient) {
                    let (_, _, dilatation) = candidate.state.map();
                    best_refined = Some(SharpnessWitness {
                        restart,
                        function_spec: candidate.map.to_spec(),
                        dilatation,
                        z: candidate.state.z,
                        w: candidate.state.w,
                        rho: candidate.rho,
                        quotient: refined,
                    });
                }
            }
            current = Some(candidate);
        }
        let summary = RestartSummary {
            restart,
            evaluations,
            quotient: best_refined.as_ref().map_or(0.0, |b| b.quotient),
            rho: best_refined.as_ref().map_or(0.0, |b| b.rho),
        };
        (summary, best_refined)
    }
}

/// Runs the search on the current rayon pool.
pub fn sharpness_search(cfg: &SharpnessConfig) -> Result<SharpnessReport> {
    if cfg.budget < MIN_BUDGET {
        return Err(Error::Config(format!("budget must be at least {MIN_BUDGET}, got {}", cfg.budget)));
    }
    cfg.sup.validate()?;
    let start = Instant::now();
    let searcher = Searcher {
        cfg,
        functional: cfg.kind.functional(),
        kind: cfg.kind.campaign_kind(),
    };
    let n_restarts = cfg.budget.div_ceil(RESTART_LENGTH);
    let results: Vec<_> = (0..n_restarts)
        .into_par_iter()
        .map(|i| searcher.restart(i, RESTART_LENGTH.min(cfg.budget - i * RESTART_LENGTH)))
        .collect();

    let mut restarts = Vec::with_capacity(results.len());
    let mut best: Option<SharpnessWitness> = None;
    for (summary, witness) in results {
        restarts.push(summary);
        if let Some(w) = witness {
            if best.as_ref().is_none_or(|b| w.quotient > b.quotient) {
                best = Some(w);
            }
        }
    }
    let bound = cfg.kind.bound();
    let max_raw = best.as_ref().map_or(0.0, |b| b.quotient);
    Ok(SharpnessReport {
        kind: cfg.kind,
        seed: cfg.seed,
        budget: cfg.budget,
        bound,
        max_raw_quotient: max_raw,
        max_quotient: max_raw / bound,
        best,
        restarts,
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_budget() {
        assert!(sharpness_search(&SharpnessConfig::new(SharpnessKind::Theorem1, 1, 99)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for k in SharpnessKind::ALL {
            assert_eq!(k.name().parse::<SharpnessKind>().unwrap(), k);
        }
    }

    #[test]
    fn maximum_is_monotone_in_budget() {
        let mut last = 0.0;
        for budget in [100, 250, 400] {
            let r = sharpness_search(&SharpnessConfig::new(SharpnessKind::Theorem1, 3, budget)).unwrap();
            assert!(r.max_raw_quotient >= last);
            assert!(r.max_raw_quotient <= r.bound);
            assert_eq!(r.restarts.iter().map(|s| s.evaluations).sum::<usize>(), budget);
            last = r.max_raw_quotient;
        }
    }

    #[test]
    fn every_kind_stays_below_its_bound() {
        for kind in SharpnessKind::ALL {
            let r = sharpness_search(&SharpnessConfig::new(kind, 11, 200)).unwrap();
            assert!(r.max_raw_quotient > 0.0, "{kind}");
            assert!(r.max_quotient <= 1.0, "{kind}: {}", r.max_quotient);
            let best = r.best.unwrap();
            assert_eq!(best.quotient, r.max_raw_quotient);
            if kind == SharpnessKind::Theorem2 {
                assert!(best.dilatation.is_some());
            }
        }
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SharpnessConfig::new(SharpnessKind::TheoremA, 5, 150);
        let a = sharpness_search(&cfg).unwrap().without_timing();
        let b = sharpness_search(&cfg).unwrap().without_timing();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
