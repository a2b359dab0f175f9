//! Möbius automorphisms of the unit disk and the pseudo-hyperbolic metric.
//!
//! The automorphism used throughout is the involution
//! `φ_w(z) = (w − z) / (1 − w̄z)`, which swaps `0` and `w`. The
//! pseudo-hyperbolic distance is `ρ(z, w) = |φ_w(z)|`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Points with `|z| ≥ 1 − BOUNDARY_MARGIN` are rejected.
pub const BOUNDARY_MARGIN: f64 = 1e-12;

/// A point of the open unit disk.
#[derive(Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64 { re: 0.0, im: 0.0 });

    pub fn new(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && z.norm() < 1.0 - BOUNDARY_MARGIN {
            Ok(DiskPoint(z))
        } else {
            Err(Error::OutsideDisk(z))
        }
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    /// `1 − |z|²`, the conformal weight appearing in every Bloch-type seminorm.
    #[inline]
    pub fn weight(self) -> f64 {
        1.0 - self.0.norm_sqr()
    }
}

impl fmt::Debug for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiskPoint({} {:+}i)", self.0.re, self.0.im)
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Self {
        p.0
    }
}

impl Serialize for DiskPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiskPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(deserializer)?;
        DiskPoint::from_re_im(re, im).map_err(serde::de::Error::custom)
    }
}

/// The disk automorphism `φ_w(z) = (w − z)/(1 − w̄z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusTransform {
    pivot: DiskPoint,
}

impl MobiusTransform {
    pub fn new(pivot: DiskPoint) -> Self {
        MobiusTransform { pivot }
    }

    pub fn pivot(&self) -> DiskPoint {
        self.pivot
    }

    /// Evaluates `φ_w` at an arbitrary complex number. Callers inside the
    /// disk should prefer [`mobius_apply`].
    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = self.pivot.0;
        (w - z) / (Complex64::new(1.0, 0.0) - w.conj() * z)
    }

    /// `φ_w'(z) = (|w|² − 1)/(1 − w̄z)²`.
    #[inline]
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let w = self.pivot.0;
        let d = Complex64::new(1.0, 0.0) - w.conj() * z;
        Complex64::new(w.norm_sqr() - 1.0, 0.0) / (d * d)
    }

    /// `φ_w''(z) = 2w̄(|w|² − 1)/(1 − w̄z)³`.
    #[inline]
    pub fn second_derivative(&self, z: Complex64) -> Complex64 {
        let w = self.pivot.0;
        let d = Complex64::new(1.0, 0.0) - w.conj() * z;
        w.conj() * (2.0 * (w.norm_sqr() - 1.0)) / (d * d * d)
    }

    /// Image of a disk point, which is again a disk point. Images within
    /// `BOUNDARY_MARGIN` of the circle (possible only through rounding) are
    /// pulled back radially.
    pub fn map_point(&self, z: DiskPoint) -> DiskPoint {
        let image = self.apply(z.0);
        let limit = 1.0 - 2.0 * BOUNDARY_MARGIN;
        let r = image.norm();
        if r < limit {
            DiskPoint(image)
        } else {
            DiskPoint(image * (limit / r))
        }
    }
}

pub fn mobius_apply(t: &MobiusTransform, z: DiskPoint) -> Complex64 {
    t.apply(z.0)
}

pub fn mobius_derivative(t: &MobiusTransform, z: DiskPoint) -> Complex64 {
    t.derivative(z.0)
}

/// `ρ(z, w) = |w − z| / |1 − w̄z|`, computed directly rather than through
/// [`mobius_apply`].
pub fn pseudo_distance(z: DiskPoint, w: DiskPoint) -> f64 {
    let (z, w) = (z.0, w.0);
    let num = (w - z).norm();
    let den = (Complex64::new(1.0, 0.0) - w.conj() * z).norm();
    (num / den).min(1.0 - f64::EPSILON)
}

/// `1 − ρ(z, w)² = (1 − |z|²)(1 − |w|²) / |1 − z̄w|²`, without cancellation.
pub fn one_minus_rho_sq(z: DiskPoint, w: DiskPoint) -> f64 {
    let den = (Complex64::new(1.0, 0.0) - z.0.conj() * w.0).norm_sqr();
    z.weight() * w.weight() / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_re_im(re, im).unwrap()
    }

    fn random_point(rng: &mut impl Rng, radius: f64) -> DiskPoint {
        let r = radius * rng.gen::<f64>().sqrt();
        DiskPoint::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU)).unwrap()
    }

    #[test]
    fn rejects_boundary_and_exterior() {
        assert!(DiskPoint::from_re_im(1.0, 0.0).is_err());
        assert!(DiskPoint::from_re_im(0.0, -1.5).is_err());
        assert!(DiskPoint::from_re_im(1.0 - 1e-13, 0.0).is_err());
        assert!(DiskPoint::from_re_im(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::from_re_im(1.0 - 1e-9, 0.0).is_ok());
    }

    #[test]
    fn apply_examples() {
        let t = MobiusTransform::new(p(0.5, 0.0));
        assert_abs_diff_eq!(mobius_apply(&t, DiskPoint::ORIGIN).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mobius_apply(&t, p(0.5, 0.0)).norm(), 0.0, epsilon = 1e-15);
        let v = mobius_apply(&t, p(-0.5, 0.0));
        assert_abs_diff_eq!(v.re, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let id = MobiusTransform::new(DiskPoint::ORIGIN);
        assert_abs_diff_eq!(mobius_derivative(&id, p(0.3, 0.0)).re, -1.0, epsilon = 1e-15);
        let t = MobiusTransform::new(p(0.5, 0.0));
        assert_abs_diff_eq!(mobius_derivative(&t, DiskPoint::ORIGIN).re, -0.75, epsilon = 1e-15);
        let w = p(0.2, -0.7);
        let d = mobius_derivative(&MobiusTransform::new(w), DiskPoint::ORIGIN);
        assert_abs_diff_eq!(d.re, -(1.0 - 0.53), epsilon = 1e-15);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn distance_examples() {
        let a = p(0.3, 0.1);
        assert_eq!(pseudo_distance(a, a), 0.0);
        let w = p(-0.4, 0.6);
        assert_abs_diff_eq!(pseudo_distance(DiskPoint::ORIGIN, w), w.modulus(), epsilon = 1e-15);
        let d = pseudo_distance(p(0.3, 0.0), p(0.0, 0.5));
        assert_abs_diff_eq!(d, (0.34f64 / 1.0225).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(d, 0.57665, epsilon = 1e-5);
    }

    #[test]
    fn one_minus_rho_sq_examples() {
        assert_eq!(one_minus_rho_sq(DiskPoint::ORIGIN, DiskPoint::ORIGIN), 1.0);
        let v = one_minus_rho_sq(p(0.3, 0.0), p(0.0, 0.5));
        assert_abs_diff_eq!(v, 0.6825 / 1.0225, epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.66748, epsilon = 1e-5);
        let z = p(-0.2, 0.9);
        assert_abs_diff_eq!(one_minus_rho_sq(z, z), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn involution_and_identity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100_000 {
            let w = random_point(&mut rng, 0.999);
            let z = random_point(&mut rng, 0.999);
            let t = MobiusTransform::new(w);
            assert!((t.apply(t.apply(z.value())) - z.value()).norm() < 1e-12);

            let rho = pseudo_distance(z, w);
            let product = one_minus_rho_sq(z, w);
            let via_derivative = w.weight() * MobiusTransform::new(z).derivative(w.value()).norm();
            assert!((product - (1.0 - rho * rho)).abs() < 1e-12);
            assert!((product - via_derivative).abs() < 1e-12);
        }
    }

    #[test]
    fn distance_is_invariant_under_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10_000 {
            let a = MobiusTransform::new(random_point(&mut rng, 0.95));
            let u = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            let z = random_point(&mut rng, 0.95);
            let w = random_point(&mut rng, 0.95);
            let fz = DiskPoint::new(u * a.apply(z.value())).unwrap();
            let fw = DiskPoint::new(u * a.apply(w.value())).unwrap();
            assert!((pseudo_distance(fz, fw) - pseudo_distance(z, w)).abs() < 1e-12);
            assert!((pseudo_distance(z, w) - pseudo_distance(w, z)).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let h = 1e-5;
        for _ in 0..1_000 {
            let t = MobiusTransform::new(random_point(&mut rng, 0.9));
            let z = random_point(&mut rng, 0.9).value();
            let fd = (t.apply(z + h) - t.apply(z - h)) / (2.0 * h);
            let exact = t.derivative(z);
            assert!((fd - exact).norm() / exact.norm() < 1e-6);
            let fd2 = (t.derivative(z + h) - t.derivative(z - h)) / (2.0 * h);
            let exact2 = t.second_derivative(z);
            assert!((fd2 - exact2).norm() <= 1e-6 * exact2.norm().max(1.0));
        }
    }

    #[test]
    fn serde_rejects_exterior_points() {
        let ok: DiskPoint = serde_json::from_str("[0.25, -0.5]").unwrap();
        assert_eq!(ok, p(0.25, -0.5));
        assert!(serde_json::from_str::<DiskPoint>("[1.0, 0.0]").is_err());
    }
}
