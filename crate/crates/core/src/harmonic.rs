//! Harmonic mappings `f = h + conj(g)` and their pointwise derivative data.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{Analytic, AnalyticFunction, LogFixture, Polynomial};
use crate::disk::DiskPoint;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicMap {
    pub h: Analytic,
    pub g: Analytic,
}

/// Pointwise derivative data of a harmonic map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivativeBundle {
    /// `f_z = h'(z)`
    pub fz: Complex64,
    /// `f_z̄ = conj(g'(z))`
    pub fzbar: Complex64,
    /// `Λ_f = |f_z| + |f_z̄|`
    pub big_lambda: f64,
    /// `λ_f = ||f_z| − |f_z̄||`
    pub small_lambda: f64,
    /// `J_f = |f_z|² − |f_z̄|²`
    pub jacobian: f64,
    /// `|ω_f| = |f_z̄|/|f_z|`, absent where `f_z = 0`.
    pub dilatation_modulus: Option<f64>,
}

impl HarmonicMap {
    pub fn new(h: impl Into<Analytic>, g: impl Into<Analytic>) -> Self {
        HarmonicMap {
            h: h.into(),
            g: g.into(),
        }
    }

    /// Analytic map `h` (co-analytic part zero).
    pub fn analytic(h: impl Into<Analytic>) -> Self {
        Self::new(h, Analytic::zero())
    }

    /// `z + k·conj(z)`: constant dilatation `k`.
    pub fn affine(k: f64) -> Self {
        Self::new(
            Polynomial::identity(),
            Polynomial::from_real(&[0.0, k]),
        )
    }

    pub fn log_fixture() -> Self {
        Self::analytic(LogFixture)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.h.eval(z) + self.g.eval(z).conj()
    }

    /// `ψ = f ∘ φ_w`, kept decomposed as `H + conj(G)` with `H = h∘φ_w`, `G = g∘φ_w`.
    pub fn compose_with_mobius(&self, w: DiskPoint) -> HarmonicMap {
        HarmonicMap {
            h: self.h.compose_with_mobius(w),
            g: self.g.compose_with_mobius(w),
        }
    }

    /// `|f_z|` and `|f_z̄|` at a point; the hot path of every seminorm.
    #[inline]
    pub fn derivative_moduli(&self, z: Complex64) -> (f64, f64) {
        (self.h.deriv(z).norm(), self.g.deriv(z).norm())
    }

    /// `Λ_f(z)`
    #[inline]
    pub fn big_lambda(&self, z: Complex64) -> f64 {
        let (a, b) = self.derivative_moduli(z);
        a + b
    }

    /// `J_f(z)`
    #[inline]
    pub fn jacobian(&self, z: Complex64) -> f64 {
        self.h.deriv(z).norm_sqr() - self.g.deriv(z).norm_sqr()
    }

    pub fn to_spec(&self) -> Option<MapSpec> {
        match (&self.h, &self.g) {
            (Analytic::Log(_), g) if is_zero(g) => Some(MapSpec::Tag(MapTag::LogFixture)),
            _ => Some(MapSpec::Parts {
                h: PartSpec::from_analytic(&self.h)?,
                g: PartSpec::from_analytic(&self.g)?,
            }),
        }
    }
}

fn is_zero(a: &Analytic) -> bool {
    matches!(a, Analytic::Polynomial(p) if p.coeffs().iter().all(|c| c.norm() == 0.0))
}

pub fn bundle_at(f: &HarmonicMap, z: DiskPoint) -> DerivativeBundle {
    let fz = f.h.deriv(z.value());
    let fzbar = f.g.deriv(z.value()).conj();
    let (a, b) = (fz.norm(), fzbar.norm());
    DerivativeBundle {
        fz,
        fzbar,
        big_lambda: a + b,
        small_lambda: (a - b).abs(),
        jacobian: fz.norm_sqr() - fzbar.norm_sqr(),
        dilatation_modulus: (a > 0.0).then(|| b / a),
    }
}

/// `∂_α f(z) = e^{iα} f_z + e^{−iα} f_z̄`.
pub fn directional_derivative(f: &HarmonicMap, z: DiskPoint, alpha: f64) -> Complex64 {
    let b = bundle_at(f, z);
    let e = Complex64::from_polar(1.0, alpha);
    e * b.fz + e.conj() * b.fzbar
}

/// Max and min of `|∂_α f(z)|` over `n_angles` equally spaced directions.
pub fn extremal_direction_check(f: &HarmonicMap, z: DiskPoint, n_angles: usize) -> Result<(f64, f64)> {
    if n_angles < 8 {
        return Err(Error::Config(format!("n_angles must be at least 8, got {n_angles}")));
    }
    let b = bundle_at(f, z);
    let (mut max, mut min) = (f64::NEG_INFINITY, f64::INFINITY);
    for j in 0..n_angles {
        let e = Complex64::from_polar(1.0, TAU * j as f64 / n_angles as f64);
        let m = (e * b.fz + e.conj() * b.fzbar).norm();
        max = max.max(m);
        min = min.min(m);
    }
    Ok((max, min))
}

/// `(|f_z| + |f_z̄|)/(|f_z| − |f_z̄|)`, defined where `J_f > 0`.
pub fn quasiregularity_pointwise(f: &HarmonicMap, z: DiskPoint) -> Result<f64> {
    let (a, b) = f.derivative_moduli(z.value());
    let jacobian = a * a - b * b;
    if jacobian <= 0.0 || a - b <= 0.0 {
        return Err(Error::NotSensePreserving {
            at: z.value(),
            jacobian,
        });
    }
    Ok((a + b) / (a - b))
}

/// Serialized form of a harmonic map: `{"h": <part>, "g": <part>}` where each
/// part is an array of `[re, im]` coefficients or the tag `"log_fixture"`;
/// the bare tag `"log_fixture"` stands for `h = log(1 − z²)`, `g = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Tag(MapTag),
    Parts { h: PartSpec, g: PartSpec },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapTag {
    LogFixture,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PartSpec {
    Tag(MapTag),
    Polynomial(Polynomial),
}

impl PartSpec {
    fn from_analytic(a: &Analytic) -> Option<Self> {
        match a {
            Analytic::Polynomial(p) => Some(PartSpec::Polynomial(p.clone())),
            Analytic::Log(_) => Some(PartSpec::Tag(MapTag::LogFixture)),
            Analytic::Composed(_) => None,
        }
    }

    fn into_analytic(self) -> Analytic {
        match self {
            PartSpec::Tag(MapTag::LogFixture) => LogFixture.into(),
            PartSpec::Polynomial(p) => p.into(),
        }
    }
}

impl From<MapSpec> for HarmonicMap {
    fn from(spec: MapSpec) -> Self {
        match spec {
            MapSpec::Tag(MapTag::LogFixture) => HarmonicMap::log_fixture(),
            MapSpec::Parts { h, g } => HarmonicMap::new(h.into_analytic(), g.into_analytic()),
        }
    }
}

impl MapSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed == "log_fixture" {
            return Ok(MapSpec::Tag(MapTag::LogFixture));
        }
        serde_json::from_str(trimmed).map_err(|e| Error::MapSpec(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_re_im(re, im).unwrap()
    }

    fn random_point(rng: &mut impl Rng, radius: f64) -> DiskPoint {
        let r = radius * rng.gen::<f64>().sqrt();
        DiskPoint::from_polar(r, rng.gen_range(0.0..TAU)).unwrap()
    }

    fn random_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
        Polynomial::new(
            (0..=degree)
                .map(|k| {
                    let s = 1.0 / (k + 1) as f64;
                    Complex64::new(rng.gen_range(-s..s), rng.gen_range(-s..s))
                })
                .collect(),
        )
    }

    #[test]
    fn bundle_examples() {
        let id = HarmonicMap::analytic(Polynomial::identity());
        let b = bundle_at(&id, p(0.3, -0.2));
        assert_eq!((b.big_lambda, b.small_lambda, b.jacobian), (1.0, 1.0, 1.0));
        assert_eq!(b.fzbar.norm(), 0.0);

        let b = bundle_at(&HarmonicMap::affine(0.5), p(-0.1, 0.6));
        assert_abs_diff_eq!(b.big_lambda, 1.5);
        assert_abs_diff_eq!(b.small_lambda, 0.5);
        assert_abs_diff_eq!(b.jacobian, 0.75);
        assert_abs_diff_eq!(b.dilatation_modulus.unwrap(), 0.5);

        let sq = HarmonicMap::analytic(Polynomial::from_real(&[0.0, 0.0, 1.0]));
        let b = bundle_at(&sq, p(0.5, 0.0));
        assert_abs_diff_eq!(b.big_lambda, 1.0);
        assert_abs_diff_eq!(b.jacobian, 1.0);
    }

    #[test]
    fn dilatation_undefined_at_critical_point() {
        let sq = HarmonicMap::analytic(Polynomial::from_real(&[0.0, 0.0, 1.0]));
        assert_eq!(bundle_at(&sq, DiskPoint::ORIGIN).dilatation_modulus, None);
    }

    #[test]
    fn directional_examples() {
        let f = HarmonicMap::affine(0.5);
        let z = p(0.2, 0.1);
        assert_abs_diff_eq!(directional_derivative(&f, z, 0.0).re, 1.5, epsilon = 1e-15);
        let d = directional_derivative(&f, z, FRAC_PI_2);
        assert_abs_diff_eq!(d.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.im, 0.5, epsilon = 1e-15);

        let id = HarmonicMap::analytic(Polynomial::identity());
        let d = directional_derivative(&id, z, 1.1);
        assert_abs_diff_eq!((d - Complex64::from_polar(1.0, 1.1)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn extremal_direction_examples() {
        let z = p(0.4, 0.4);
        let (max, min) =
            extremal_direction_check(&HarmonicMap::analytic(Polynomial::identity()), z, 360).unwrap();
        assert_abs_diff_eq!(max, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(min, 1.0, epsilon = 1e-15);

        let (max, min) = extremal_direction_check(&HarmonicMap::affine(0.5), z, 360).unwrap();
        assert_abs_diff_eq!(max, 1.5, epsilon = 1e-4);
        assert_abs_diff_eq!(min, 0.5, epsilon = 1e-4);

        let zero = HarmonicMap::analytic(Polynomial::zero());
        assert_eq!(extremal_direction_check(&zero, z, 360).unwrap(), (0.0, 0.0));
        assert!(extremal_direction_check(&zero, z, 4).is_err());
    }

    #[test]
    fn extremal_grid_converges_quadratically() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = HarmonicMap::new(random_poly(&mut rng, 5), random_poly(&mut rng, 5));
        for _ in 0..50 {
            let z = random_point(&mut rng, 0.9);
            let b = bundle_at(&f, z);
            for n in [16usize, 64, 256] {
                let (max, min) = extremal_direction_check(&f, z, n).unwrap();
                assert!(max <= b.big_lambda + 1e-12 && min >= b.small_lambda - 1e-12);
                let step = TAU / n as f64;
                assert!(b.big_lambda - max <= 0.5 * b.big_lambda * step * step + 1e-12);
            }
        }
    }

    #[test]
    fn quasiregularity_examples() {
        let z = p(0.3, 0.3);
        let id = HarmonicMap::analytic(Polynomial::identity());
        assert_abs_diff_eq!(quasiregularity_pointwise(&id, z).unwrap(), 1.0);
        assert_abs_diff_eq!(quasiregularity_pointwise(&HarmonicMap::affine(0.5), z).unwrap(), 3.0);
        assert_abs_diff_eq!(
            quasiregularity_pointwise(&HarmonicMap::affine(0.9), z).unwrap(),
            19.0,
            epsilon = 1e-12
        );
        let folded = HarmonicMap::new(Polynomial::identity(), Polynomial::from_real(&[0.0, 1.5]));
        assert!(matches!(
            quasiregularity_pointwise(&folded, z),
            Err(Error::NotSensePreserving { .. })
        ));
    }

    #[test]
    fn bundle_invariants_hold_on_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let f = HarmonicMap::new(random_poly(&mut rng, 6), random_poly(&mut rng, 6));
            let z = random_point(&mut rng, 0.95);
            let b = bundle_at(&f, z);
            assert_abs_diff_eq!(b.big_lambda, b.fz.norm() + b.fzbar.norm(), epsilon = 1e-14);
            let sign = b.jacobian.signum();
            assert_abs_diff_eq!(b.jacobian, sign * b.big_lambda * b.small_lambda, epsilon = 1e-12);
            assert!(b.big_lambda + 1e-15 >= b.jacobian.abs().sqrt());
        }
    }

    #[test]
    fn generated_maps_are_harmonic() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let step = 1e-3;
        for _ in 0..20 {
            let f = HarmonicMap::new(random_poly(&mut rng, 8), random_poly(&mut rng, 8));
            for _ in 0..100 {
                let z = random_point(&mut rng, 0.5).value();
                let i = Complex64::new(0.0, step);
                let laplacian = (f.eval(z + step) + f.eval(z - step) + f.eval(z + i) + f.eval(z - i)
                    - 4.0 * f.eval(z))
                    / (step * step);
                assert!(laplacian.norm() < 1e-5, "|Δf| = {}", laplacian.norm());
            }
        }
    }

    #[test]
    fn transport_identity_through_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..50 {
            let f = HarmonicMap::new(random_poly(&mut rng, 6), random_poly(&mut rng, 6));
            let w = random_point(&mut rng, 0.9);
            let psi = f.compose_with_mobius(w);
            let t = crate::disk::MobiusTransform::new(w);
            for _ in 0..100 {
                let zeta = random_point(&mut rng, 0.99);
                let lhs = zeta.weight() * psi.big_lambda(zeta.value());
                let image = t.map_point(zeta);
                let rhs = image.weight() * f.big_lambda(image.value());
                assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn map_spec_round_trip_and_tags() {
        let f = HarmonicMap::new(
            Polynomial::from_real(&[0.0, 1.0]),
            Polynomial::from_real(&[0.0, 0.25]),
        );
        let json = serde_json::to_string(&f.to_spec().unwrap()).unwrap();
        assert_eq!(json, r#"{"h":[[0.0,0.0],[1.0,0.0]],"g":[[0.0,0.0],[0.25,0.0]]}"#);
        assert_eq!(HarmonicMap::from(MapSpec::parse(&json).unwrap()), f);

        let log: HarmonicMap = MapSpec::parse("\"log_fixture\"").unwrap().into();
        assert_eq!(log, HarmonicMap::log_fixture());
        assert_eq!(HarmonicMap::from(MapSpec::parse("log_fixture").unwrap()), log);
        let mixed = MapSpec::parse(r#"{"h":"log_fixture","g":[[0,0],[0.5,0]]}"#).unwrap();
        assert!(matches!(HarmonicMap::from(mixed).h, Analytic::Log(_)));
        assert!(MapSpec::parse(r#"{"h":[[1,2,3]]}"#).is_err());
        assert!(MapSpec::parse("nonsense").is_err());
    }
}
