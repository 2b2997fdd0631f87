//! Coefficient field for Maass–Fourier expansions.
//!
//! [`ExactCoeff`] is an element of Q(i)[π^{±1}, ζ(3), ζ(5), …, log p, γ, Λratio(D)]
//! with the symbols treated as algebraically independent, so equality and
//! zero tests are decidable. Even zeta values never appear as symbols: they
//! are rewritten to rational multiples of even powers of π on construction.
//!
//! Floating coefficients are `Complex<T>` for any [`Real`] `T`. Both kinds
//! implement [`Scalar`], the interface the term algebra is written against.

pub mod symbol;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, zeta_even_over_pi};
use crate::error::{Error, Result};
use crate::real::{BigReal, Real};
pub use symbol::{registered_symbols, Monomial, Symbol};

/// Gaussian rational a + bi.
pub type Gauss = Complex<BigRational>;

pub fn gauss(re: BigRational, im: BigRational) -> Gauss {
    Complex::new(re, im)
}

pub fn gauss_int(n: i64) -> Gauss {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

fn gauss_is_zero(g: &Gauss) -> bool {
    g.re.is_zero() && g.im.is_zero()
}

fn gauss_to<T: Real>(g: &Gauss) -> Complex<T> {
    Complex::new(T::from_rational(&g.re), T::from_rational(&g.im))
}

/// How a vanishing decision was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Exact,
    Numeric,
}

impl Certainty {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certainty::Exact => "exact",
            Certainty::Numeric => "numeric",
        }
    }

    pub fn and(self, other: Certainty) -> Certainty {
        if self == Certainty::Exact && other == Certainty::Exact {
            Certainty::Exact
        } else {
            Certainty::Numeric
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroTest {
    pub zero: bool,
    pub certainty: Certainty,
}

/// Relative tolerance used for floating zero tests unless overridden.
pub const DEFAULT_TOL: f64 = 1e-30;

/// Exact coefficient: finite sum of Gaussian rationals times symbol monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactCoeff {
    terms: BTreeMap<Monomial, Gauss>,
}

impl ExactCoeff {
    pub fn zero() -> Self {
        ExactCoeff { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(gauss_int(n), Monomial::one())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(Complex::new(r, BigRational::zero()), Monomial::one())
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(crate::arith::rat(n, d))
    }

    pub fn from_gauss(g: Gauss) -> Self {
        Self::monomial(g, Monomial::one())
    }

    pub fn i() -> Self {
        Self::from_gauss(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn monomial(g: Gauss, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !gauss_is_zero(&g) {
            terms.insert(m, g);
        }
        ExactCoeff { terms }
    }

    pub fn pi_pow(e: i32) -> Self {
        Self::monomial(gauss_int(1), Monomial::single(Symbol::Pi, e))
    }

    pub fn symbol(sym: Symbol) -> Self {
        match sym {
            Symbol::Zeta(n) => Self::zeta(n),
            Symbol::Log(p) => Self::log_int(p),
            other => Self::monomial(gauss_int(1), Monomial::single(other, 1)),
        }
    }

    /// ζ(n) for n ≥ 2; even arguments become rational multiples of π^n.
    pub fn zeta(n: u32) -> Self {
        assert!(n >= 2, "ζ(n) is only provided for n ≥ 2");
        if n % 2 == 0 {
            Self::from_rational(zeta_even_over_pi(n)) * Self::pi_pow(n as i32)
        } else {
            Self::monomial(gauss_int(1), Monomial::single(Symbol::Zeta(n), 1))
        }
    }

    /// log n as an integer combination of log p symbols.
    pub fn log_int(n: u64) -> Self {
        assert!(n >= 1, "log of zero");
        let mut acc = Self::zero();
        for (p, e) in factorize(n) {
            acc = acc
                + Self::monomial(gauss_int(e as i64), Monomial::single(Symbol::Log(p), 1));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|g| g.re.is_one() && g.im.is_zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Gauss)> {
        self.terms.iter()
    }

    /// The value if this is a plain Gaussian rational.
    pub fn as_gauss(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(gauss_int(0)),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gauss().filter(|g| g.im.is_zero()).map(|g| g.re)
    }

    pub fn conj(&self) -> Self {
        ExactCoeff {
            terms: self
                .terms
                .iter()
                .map(|(m, g)| (m.clone(), g.conj()))
                .collect(),
        }
    }

    pub fn scale(&self, g: &Gauss) -> Self {
        if gauss_is_zero(g) {
            return Self::zero();
        }
        ExactCoeff {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * g)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&Complex::new(r.clone(), BigRational::zero()))
    }

    /// Division by a coefficient consisting of a single monomial term.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.terms.len() != 1 {
            return Err(Error::Domain(format!(
                "exact division needs a single-monomial divisor, got {other}"
            )));
        }
        let (m, g) = other.terms.iter().next().expect("one term");
        let inv_g = Complex::new(BigRational::one(), BigRational::zero()) / g.clone();
        let inv = Self::monomial(inv_g, m.inverse());
        Ok(self.clone() * inv)
    }

    /// If `self = c·other` for a Gaussian rational c, return c.
    pub fn proportionality(&self, other: &Self) -> Option<Gauss> {
        if other.is_zero() {
            return None;
        }
        let (m0, g0) = other.terms.iter().next()?;
        let c = self.terms.get(m0)? / g0;
        if *self == other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    pub fn eval<T: Real>(&self) -> Complex<T> {
        self.eval_with(&|s: Symbol| s.value::<T>())
    }

    pub fn eval_with<T: Real>(&self, bind: &dyn Fn(Symbol) -> T) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (m, g) in &self.terms {
            let mut v = T::one();
            for (s, e) in m.iter() {
                v = v * bind(s).powi(e);
            }
            let c = gauss_to::<T>(g);
            acc = acc + Complex::new(c.re * v.clone(), c.im * v);
        }
        acc
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(s, _)| s))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn insert_add(&mut self, m: &Monomial, g: &Gauss) {
        if gauss_is_zero(g) {
            return;
        }
        match self.terms.get_mut(m) {
            Some(c) => {
                *c = &*c + g;
                if gauss_is_zero(c) {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), g.clone());
            }
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_gauss(g: &Gauss) -> String {
    match (g.re.is_zero(), g.im.is_zero()) {
        (_, true) => fmt_rational(&g.re),
        (true, false) => {
            if g.im.is_one() {
                "i".into()
            } else if (-g.im.clone()).is_one() {
                "-i".into()
            } else {
                format!("{}i", fmt_rational(&g.im))
            }
        }
        _ => {
            let sign = if g.im.is_negative() { "-" } else { "+" };
            format!("({}{}{}i)", fmt_rational(&g.re), sign, fmt_rational(&g.im.abs()))
        }
    }
}

impl fmt::Display for ExactCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, g)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_gauss(g))?;
            } else if g.re.is_one() && g.im.is_zero() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}·{m}", fmt_gauss(g))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for ExactCoeff {
    type Output = ExactCoeff;
    fn add(mut self, rhs: ExactCoeff) -> ExactCoeff {
        for (m, g) in &rhs.terms {
            self.insert_add(m, g);
        }
        self
    }
}

impl<'a> Add<&'a ExactCoeff> for ExactCoeff {
    type Output = ExactCoeff;
    fn add(mut self, rhs: &'a ExactCoeff) -> ExactCoeff {
        for (m, g) in &rhs.terms {
            self.insert_add(m, g);
        }
        self
    }
}

impl AddAssign<&ExactCoeff> for ExactCoeff {
    fn add_assign(&mut self, rhs: &ExactCoeff) {
        for (m, g) in &rhs.terms {
            self.insert_add(m, g);
        }
    }
}

impl Neg for ExactCoeff {
    type Output = ExactCoeff;
    fn neg(self) -> ExactCoeff {
        ExactCoeff {
            terms: self.terms.into_iter().map(|(m, g)| (m, -g)).collect(),
        }
    }
}

impl Sub for ExactCoeff {
    type Output = ExactCoeff;
    fn sub(self, rhs: ExactCoeff) -> ExactCoeff {
        self + (-rhs)
    }
}

impl<'a, 'b> Mul<&'b ExactCoeff> for &'a ExactCoeff {
    type Output = ExactCoeff;
    fn mul(self, rhs: &'b ExactCoeff) -> ExactCoeff {
        let mut out = ExactCoeff::zero();
        for (m1, g1) in &self.terms {
            for (m2, g2) in &rhs.terms {
                out.insert_add(&m1.mul(m2), &(g1 * g2));
            }
        }
        out
    }
}

impl Mul for ExactCoeff {
    type Output = ExactCoeff;
    fn mul(self, rhs: ExactCoeff) -> ExactCoeff {
        &self * &rhs
    }
}

/// Interface shared by exact and floating coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// Structural zero (exact zero for floats).
    fn is_zero(&self) -> bool;
    fn from_exact(c: &ExactCoeff) -> Self;
    fn conj(&self) -> Self;
    /// Rough magnitude, used for relative zero tests.
    fn magnitude(&self) -> f64;
    fn to_complex<T: Real>(&self) -> Complex<T>;
    /// Try to invert; exact coefficients need a single monomial.
    fn try_inv(&self) -> Option<Self>;

    fn zero_test(&self, scale: f64, tol: f64) -> ZeroTest {
        if Self::EXACT {
            ZeroTest { zero: self.is_zero(), certainty: Certainty::Exact }
        } else {
            let zero = self.is_zero() || self.magnitude() <= tol * scale.max(f64::MIN_POSITIVE);
            ZeroTest { zero, certainty: Certainty::Numeric }
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_exact(&ExactCoeff::from_int(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        Self::from_exact(&ExactCoeff::from_bigint(n.clone()))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::from_exact(&ExactCoeff::from_rational(r.clone()))
    }
    fn from_gauss(g: &Gauss) -> Self {
        Self::from_exact(&ExactCoeff::from_gauss(g.clone()))
    }
    fn i() -> Self {
        Self::from_exact(&ExactCoeff::i())
    }
    fn pi_pow(e: i32) -> Self {
        Self::from_exact(&ExactCoeff::pi_pow(e))
    }
    fn scale_rational(&self, r: &BigRational) -> Self {
        self.clone() * Self::from_rational(r)
    }
}

impl Scalar for ExactCoeff {
    const EXACT: bool = true;

    fn zero() -> Self {
        ExactCoeff::zero()
    }
    fn one() -> Self {
        ExactCoeff::one()
    }
    fn is_zero(&self) -> bool {
        ExactCoeff::is_zero(self)
    }
    fn from_exact(c: &ExactCoeff) -> Self {
        c.clone()
    }
    fn conj(&self) -> Self {
        ExactCoeff::conj(self)
    }
    fn magnitude(&self) -> f64 {
        let v = self.eval::<f64>();
        v.norm()
    }
    fn to_complex<T: Real>(&self) -> Complex<T> {
        self.eval::<T>()
    }
    fn try_inv(&self) -> Option<Self> {
        ExactCoeff::one().checked_div(self).ok()
    }
    fn scale_rational(&self, r: &BigRational) -> Self {
        ExactCoeff::scale_rational(self, r)
    }
}

impl<T: Real> Scalar for Complex<T> {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn one() -> Self {
        Complex::new(T::one(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_exact(c: &ExactCoeff) -> Self {
        c.eval::<T>()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn magnitude(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
    fn to_complex<U: Real>(&self) -> Complex<U> {
        if std::any::TypeId::of::<T>() == std::any::TypeId::of::<U>() {
            let any: &dyn std::any::Any = self;
            if let Some(same) = any.downcast_ref::<Complex<U>>() {
                return same.clone();
            }
        }
        Complex::new(U::from_f64(self.re.to_f64()), U::from_f64(self.im.to_f64()))
    }
    fn try_inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            let n = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
            Some(Complex::new(self.re.clone() / n.clone(), -self.im.clone() / n))
        }
    }
}

/// Floating coefficient at the working precision.
pub type FloatCoeff = Complex<BigReal>;

/// Coefficient whose mode is only known at run time (JSON input, CLI).
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(ExactCoeff),
    Float(FloatCoeff),
}

impl Coefficient {
    fn float_precision(c: &FloatCoeff) -> usize {
        c.re.precision().max(c.im.precision())
    }

    fn check_pair<'a>(a: &'a Coefficient, b: &'a Coefficient) -> Result<()> {
        match (a, b) {
            (Coefficient::Exact(_), Coefficient::Exact(_)) => Ok(()),
            (Coefficient::Float(x), Coefficient::Float(y)) => {
                let (px, py) = (Self::float_precision(x), Self::float_precision(y));
                if px != py {
                    Err(Error::PrecisionMismatch(px, py))
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::ModeMismatch("exact and float coefficients do not mix".into())),
        }
    }

    pub fn try_add(&self, other: &Coefficient) -> Result<Coefficient> {
        Self::check_pair(self, other)?;
        Ok(match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => Coefficient::Exact(a.clone() + b),
            (Coefficient::Float(a), Coefficient::Float(b)) => Coefficient::Float(a + b),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Coefficient) -> Result<Coefficient> {
        Self::check_pair(self, other)?;
        Ok(match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => Coefficient::Exact(a * b),
            (Coefficient::Float(a), Coefficient::Float(b)) => Coefficient::Float(a * b),
            _ => unreachable!(),
        })
    }

    pub fn conj(&self) -> Coefficient {
        match self {
            Coefficient::Exact(a) => Coefficient::Exact(a.conj()),
            Coefficient::Float(a) => Coefficient::Float(Scalar::conj(a)),
        }
    }

    pub fn is_zero(&self, tol: f64) -> ZeroTest {
        match self {
            Coefficient::Exact(a) => a.zero_test(1.0, tol),
            Coefficient::Float(a) => a.zero_test(1.0, tol),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pi() -> ExactCoeff {
        ExactCoeff::pi_pow(1)
    }

    #[test]
    fn halves_of_pi_add_up() {
        let h = pi().scale_rational(&rat(1, 2));
        assert_eq!(h.clone() + h, pi());
    }

    #[test]
    fn pi_exponents_cancel() {
        assert!((ExactCoeff::pi_pow(-1) * pi()).is_one());
        let three_over_pi = ExactCoeff::pi_pow(-1).scale_rational(&rat(3, 1));
        assert_eq!(three_over_pi * pi(), ExactCoeff::from_int(3));
    }

    #[test]
    fn conjugation_fixes_symbols() {
        let ipi = ExactCoeff::i() * pi();
        assert_eq!(ipi.conj(), -(ExactCoeff::i() * pi()));
        let c = ExactCoeff::pi_pow(-1).scale_rational(&rat(3, 1));
        assert_eq!(c.conj(), c);
        let a = ExactCoeff::from_gauss(gauss(rat(1, 1), rat(2, 1)))
            + ExactCoeff::pi_pow(2).scale(&gauss(rat(0, 1), rat(5, 1)));
        let b = ExactCoeff::from_gauss(gauss(rat(1, 1), rat(-2, 1)))
            + ExactCoeff::pi_pow(2).scale(&gauss(rat(0, 1), rat(-5, 1)));
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn zero_tests() {
        let z = ExactCoeff::zero().zero_test(1.0, DEFAULT_TOL);
        assert!(z.zero && z.certainty == Certainty::Exact);
        let d = (pi() - pi()).zero_test(1.0, DEFAULT_TOL);
        assert!(d.zero && d.certainty == Certainty::Exact);
        let f = Complex::new(BigReal::from_f64(1e-40), BigReal::from_f64(0.0));
        let t = f.zero_test(1.0, 1e-30);
        assert!(t.zero && t.certainty == Certainty::Numeric);
    }

    #[test]
    fn even_zeta_is_rewritten() {
        assert_eq!(
            ExactCoeff::zeta(4),
            ExactCoeff::pi_pow(4).scale_rational(&rat(1, 90))
        );
        assert!(ExactCoeff::zeta(3).symbols().contains(&Symbol::Zeta(3)));
    }

    #[test]
    fn log_of_composite_splits() {
        let l12 = ExactCoeff::log_int(12);
        let expect = ExactCoeff::log_int(2).scale_rational(&rat(2, 1)) + ExactCoeff::log_int(3);
        assert_eq!(l12, expect);
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = Coefficient::Exact(ExactCoeff::one());
        let b = Coefficient::Float(Complex::new(BigReal::from_f64(1.0), BigReal::from_f64(0.0)));
        assert!(matches!(a.try_add(&b), Err(Error::ModeMismatch(_))));
        let c = Coefficient::Float(Complex::new(
            BigReal::with_precision(1.0, 128),
            BigReal::with_precision(0.0, 128),
        ));
        assert!(matches!(b.try_mul(&c), Err(Error::PrecisionMismatch(_, _))));
    }

    #[test]
    fn numeric_evaluation() {
        let c = ExactCoeff::pi_pow(-1).scale_rational(&rat(3, 1)) + ExactCoeff::zeta(3);
        let v = c.eval::<f64>();
        assert!((v.re - (3.0 / std::f64::consts::PI + 1.2020569031595942)).abs() < 1e-14);
    }

    #[test]
    fn proportionality_detects_scalar_multiples() {
        let a = pi() + ExactCoeff::zeta(3);
        let b = a.scale_rational(&rat(-7, 3));
        assert_eq!(b.proportionality(&a), Some(gauss(rat(-7, 3), rat(0, 1))));
        assert_eq!((b + pi()).proportionality(&a), None);
    }
}
