//! Analytic functions on the disk with exact first and second derivatives.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::disk::{DiskPoint, MobiusTransform};

/// Default cap on generated polynomial degrees.
pub const MAX_GENERATED_DEGREE: usize = 64;

pub trait AnalyticFunction {
    fn eval(&self, z: Complex64) -> Complex64;
    fn deriv(&self, z: Complex64) -> Complex64;
    fn deriv2(&self, z: Complex64) -> Complex64;
}

/// Polynomial `a_0 + a_1 z + … + a_n z^n`, constant term first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn monomial(coeff: Complex64, degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Degree ignoring trailing zero coefficients; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .unwrap_or(0)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * k as f64)
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &a)| a / (k + 1) as f64),
        );
        Polynomial::new(coeffs)
    }

    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Value, first and second derivative in one Horner pass.
    #[inline]
    fn horner2(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        for &a in self.coeffs.iter().rev() {
            d2 = d2 * z + d1 * 2.0;
            d1 = d1 * z + p;
            p = p * z + a;
        }
        (p, d1, d2)
    }
}

pub fn poly_multiply(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p.multiply(q)
}

pub fn poly_antiderivative(p: &Polynomial) -> Polynomial {
    p.antiderivative()
}

impl AnalyticFunction for Polynomial {
    #[inline]
    fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    #[inline]
    fn deriv(&self, z: Complex64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d) = (zero, zero);
        for &a in self.coeffs.iter().rev() {
            d = d * z + p;
            p = p * z + a;
        }
        d
    }

    fn deriv2(&self, z: Complex64) -> Complex64 {
        self.horner2(z).2
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| [c.re, c.im]))
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        if pairs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(serde::de::Error::custom("non-finite polynomial coefficient"));
        }
        Ok(Polynomial::new(
            pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        ))
    }
}

/// `log(1 − z²)` on the principal branch: a Bloch function with seminorm 2
/// that is not Lipschitz on the disk.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LogFixture;

impl AnalyticFunction for LogFixture {
    fn eval(&self, z: Complex64) -> Complex64 {
        (Complex64::new(1.0, 0.0) - z * z).ln()
    }

    fn deriv(&self, z: Complex64) -> Complex64 {
        -2.0 * z / (Complex64::new(1.0, 0.0) - z * z)
    }

    fn deriv2(&self, z: Complex64) -> Complex64 {
        let d = Complex64::new(1.0, 0.0) - z * z;
        -2.0 * (Complex64::new(1.0, 0.0) + z * z) / (d * d)
    }
}

/// `outer ∘ φ_w`, evaluated pointwise through the chain rule.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusComposed<F> {
    inner: MobiusTransform,
    outer: F,
}

impl<F> MobiusComposed<F> {
    pub fn inner(&self) -> &MobiusTransform {
        &self.inner
    }

    pub fn outer(&self) -> &F {
        &self.outer
    }
}

impl<F: AnalyticFunction> AnalyticFunction for MobiusComposed<F> {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.outer.eval(self.inner.apply(z))
    }

    fn deriv(&self, z: Complex64) -> Complex64 {
        self.outer.deriv(self.inner.apply(z)) * self.inner.derivative(z)
    }

    fn deriv2(&self, z: Complex64) -> Complex64 {
        let u = self.inner.apply(z);
        let d1 = self.inner.derivative(z);
        self.outer.deriv2(u) * d1 * d1 + self.outer.deriv(u) * self.inner.second_derivative(z)
    }
}

/// The composition operator `C_{φ_w} f = f ∘ φ_w`.
pub fn compose_with_mobius<F: AnalyticFunction>(f: F, w: DiskPoint) -> MobiusComposed<F> {
    MobiusComposed {
        inner: MobiusTransform::new(w),
        outer: f,
    }
}

/// Closed set of analytic functions used by harmonic maps.
#[derive(Clone, Debug, PartialEq)]
pub enum Analytic {
    Polynomial(Polynomial),
    Log(LogFixture),
    Composed(Box<MobiusComposed<Analytic>>),
}

impl Analytic {
    pub fn zero() -> Self {
        Analytic::Polynomial(Polynomial::zero())
    }

    pub fn compose_with_mobius(&self, w: DiskPoint) -> Analytic {
        Analytic::Composed(Box::new(compose_with_mobius(self.clone(), w)))
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            Analytic::Polynomial(p) => Some(p),
            _ => None,
        }
    }
}

impl From<Polynomial> for Analytic {
    fn from(p: Polynomial) -> Self {
        Analytic::Polynomial(p)
    }
}

impl From<LogFixture> for Analytic {
    fn from(l: LogFixture) -> Self {
        Analytic::Log(l)
    }
}

impl AnalyticFunction for Analytic {
    #[inline]
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Analytic::Polynomial(p) => p.eval(z),
            Analytic::Log(l) => l.eval(z),
            Analytic::Composed(c) => c.eval(z),
        }
    }

    #[inline]
    fn deriv(&self, z: Complex64) -> Complex64 {
        match self {
            Analytic::Polynomial(p) => p.deriv(z),
            Analytic::Log(l) => l.deriv(z),
            Analytic::Composed(c) => c.deriv(z),
        }
    }

    fn deriv2(&self, z: Complex64) -> Complex64 {
        match self {
            Analytic::Polynomial(p) => p.deriv2(z),
            Analytic::Log(l) => l.deriv2(z),
            Analytic::Composed(c) => c.deriv2(z),
        }
    }
}

impl<T: AnalyticFunction + ?Sized> AnalyticFunction for &T {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }
    fn deriv(&self, z: Complex64) -> Complex64 {
        (**self).deriv(z)
    }
    fn deriv2(&self, z: Complex64) -> Complex64 {
        (**self).deriv2(z)
    }
}
