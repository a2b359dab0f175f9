//! Seeded generators for test functions and sample points.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{AnalyticFunction, Polynomial, MAX_GENERATED_DEGREE};
use crate::disk::DiskPoint;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;

const MAX_ATTEMPTS: usize = 100;
/// Required ratio `min |h'| / max |h'|` on the unit circle.
const MIN_MODULUS_RATIO: f64 = 0.1;
/// `|a_0| ≥ 1.25 Σ_{j≥1} |a_j|` gives a ratio of at least 1/9 on the closed disk.
const CONSTANT_DOMINANCE: f64 = 1.25;
const BOUNDARY_SAMPLES: usize = 64;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of stream `stream` under master seed `seed`. Independent of how
/// streams are scheduled across workers.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(stream.wrapping_mul(0xD6E8_FEB8_6659_FD93)))
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}

/// Coefficient `a_k` has real and imaginary parts uniform in `[−s, s]`, `s = scale/(k+1)`.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize, scale: f64) -> Polynomial {
    Polynomial::new(
        (0..=degree)
            .map(|k| {
                let s = scale / (k + 1) as f64;
                if s > 0.0 {
                    Complex64::new(rng.gen_range(-s..=s), rng.gen_range(-s..=s))
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect(),
    )
}

pub fn gen_polynomial(seed: u64, degree: usize, scale: f64) -> Result<Polynomial> {
    if degree > MAX_GENERATED_DEGREE {
        return Err(Error::Config(format!(
            "degree {degree} exceeds the cap of {MAX_GENERATED_DEGREE}"
        )));
    }
    if !(scale.is_finite() && scale >= 0.0) {
        return Err(Error::domain("scale", scale, "[0, ∞)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_polynomial(&mut rng, degree, scale))
}

pub fn unimodular<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Uniform by area in the disk of the given radius.
pub fn uniform_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> DiskPoint {
    let r = radius * rng.gen::<f64>().sqrt();
    DiskPoint::from_polar(r, rng.gen_range(0.0..TAU)).expect("radius below 1")
}

/// Quasiregular map with prescribed dilatation bound.
#[derive(Clone, Debug)]
pub struct QuasiregularSample {
    pub map: HarmonicMap,
    /// `h'`, nonvanishing on the closed disk.
    pub h_prime: Polynomial,
    /// `ω = k·u·z^m`
    pub rotation: Complex64,
    pub exponent: u32,
    pub k: f64,
    /// `(1 + k)/(1 − k)`
    pub big_k: f64,
}

/// Pushes the constant term of `p` out until it dominates the rest on the
/// closed disk. Returns `None` for the zero polynomial.
pub fn dominate_constant_term(p: &Polynomial) -> Option<Polynomial> {
    let mut coeffs = p.coeffs().to_vec();
    if coeffs.is_empty() {
        return None;
    }
    let tail: f64 = coeffs.iter().skip(1).map(|c| c.norm()).sum();
    let a0 = coeffs[0];
    let target = CONSTANT_DOMINANCE * tail;
    if a0.norm() < target {
        let phase = if a0.norm() > 0.0 { a0 / a0.norm() } else { Complex64::new(1.0, 0.0) };
        coeffs[0] = phase * target;
    }
    let shifted = Polynomial::new(coeffs);
    let (min, max) = (0..BOUNDARY_SAMPLES)
        .map(|j| shifted.eval(Complex64::from_polar(1.0, TAU * j as f64 / BOUNDARY_SAMPLES as f64)).norm())
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), m| (lo.min(m), hi.max(m)));
    (max > 0.0 && min >= MIN_MODULUS_RATIO * max).then_some(shifted)
}

/// Assembles `h = ∫h'`, `g = ∫ω h'` with `ω = k·u·z^m`.
pub fn assemble_quasiregular(h_prime: Polynomial, k: f64, rotation: Complex64, exponent: u32) -> QuasiregularSample {
    let omega = Polynomial::monomial(rotation * k, exponent as usize);
    let g_prime = h_prime.multiply(&omega);
    QuasiregularSample {
        map: HarmonicMap::new(h_prime.antiderivative(), g_prime.antiderivative()),
        h_prime,
        rotation,
        exponent,
        k,
        big_k: (1.0 + k) / (1.0 - k),
    }
}

pub fn sample_quasiregular<R: Rng + ?Sized>(rng: &mut R, degree: usize, k: f64) -> Result<QuasiregularSample> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::domain("k", k, "(0, 1)"));
    }
    for _ in 0..MAX_ATTEMPTS {
        let raw = random_polynomial(rng, degree, 1.0);
        let rotation = unimodular(rng);
        let exponent = rng.gen_range(0..=2u32);
        if let Some(h_prime) = dominate_constant_term(&raw) {
            return Ok(assemble_quasiregular(h_prime, k, rotation, exponent));
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

/// Sense-preserving harmonic map with `|ω| ≤ k` and its nominal `K`.
pub fn gen_quasiregular(seed: u64, degree: usize, k: f64) -> Result<(HarmonicMap, f64)> {
    if degree > MAX_GENERATED_DEGREE {
        return Err(Error::Config(format!(
            "degree {degree} exceeds the cap of {MAX_GENERATED_DEGREE}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = sample_quasiregular(&mut rng, degree, k)?;
    Ok((sample.map, sample.big_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seminorms::{bloch_seminorm, dilatation_sup, quasiregularity_constant, SupConfig};
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_generator_contract() {
        let p = gen_polynomial(3, 0, 1.0).unwrap();
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(gen_polynomial(9, 12, 0.5).unwrap(), gen_polynomial(9, 12, 0.5).unwrap());
        assert_ne!(gen_polynomial(9, 12, 0.5).unwrap(), gen_polynomial(10, 12, 0.5).unwrap());
        let p = gen_polynomial(4, 8, 1.0).unwrap();
        for (k, c) in p.coeffs().iter().enumerate() {
            let s = 1.0 / (k + 1) as f64;
            assert!(c.re.abs() <= s && c.im.abs() <= s);
        }
        assert!(bloch_seminorm(&p, &SupConfig::default()).unwrap().value > 0.0);
        assert!(gen_polynomial(1, 65, 1.0).is_err());
    }

    #[test]
    fn derived_seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for s in 0..20u64 {
            for t in 0..500u64 {
                assert!(seen.insert(derive_seed(s, t)));
            }
        }
    }

    #[test]
    fn constant_dilatation_sample() {
        let s = assemble_quasiregular(Polynomial::from_real(&[1.0]), 0.5, Complex64::new(1.0, 0.0), 0);
        assert_abs_diff_eq!(s.big_k, 3.0);
        let k = quasiregularity_constant(&s.map, &SupConfig::default()).unwrap();
        assert_abs_diff_eq!(k, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn small_dilatation_approaches_analytic() {
        let (f, big_k) = gen_quasiregular(5, 4, 1e-9).unwrap();
        assert!((big_k - 1.0).abs() < 1e-8);
        let g = f.g.as_polynomial().unwrap();
        assert!(g.coeffs().iter().all(|c| c.norm() < 1e-8));
    }

    #[test]
    fn generated_maps_respect_their_dilatation_bound() {
        let cfg = SupConfig::default();
        for seed in 0..40u64 {
            let k = [0.1, 0.5, 0.9][seed as usize % 3];
            let (f, big_k) = gen_quasiregular(seed, (seed % 7) as usize, k).unwrap();
            assert!(dilatation_sup(&f, 512, cfg.r_max).unwrap() <= k + 1e-12);
            let measured = quasiregularity_constant(&f, &cfg).unwrap();
            assert!(measured <= big_k + 1e-6, "{measured} > {big_k}");
            assert!(measured >= 1.0);
        }
    }

    #[test]
    fn dominated_derivative_never_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let s = sample_quasiregular(&mut rng, 10, 0.7).unwrap();
            let coeffs = s.h_prime.coeffs();
            let tail: f64 = coeffs.iter().skip(1).map(|c| c.norm()).sum();
            assert!(coeffs[0].norm() >= CONSTANT_DOMINANCE * tail * (1.0 - 1e-12));
        }
        assert!(dominate_constant_term(&Polynomial::zero()).is_none());
        assert!(sample_quasiregular(&mut rng, 3, 1.0).is_err());
    }
}
