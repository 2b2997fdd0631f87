//! Real scalar abstraction shared by the numeric layer.
//!
//! Everything in [`crate::analytic`] is written against [`Real`], which is
//! implemented for `f64` (fast, ~53 bits) and for [`BigReal`], an
//! arbitrary-precision binary float backed by `astro-float`.
//!
//! `BigReal` values carry their own precision. Constants created without an
//! explicit precision (`zero()`, `one()`, `from_f64`, ...) use the process-wide
//! working precision, see [`set_working_precision`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 256;

static WORKING_PRECISION: AtomicUsize = AtomicUsize::new(DEFAULT_PRECISION);

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

/// Sets the working precision (bits) used for new `BigReal` constants.
pub fn set_working_precision(bits: usize) {
    WORKING_PRECISION.store(bits.max(64), AtomicOrdering::SeqCst);
}

/// Current working precision in bits.
pub fn working_precision() -> usize {
    WORKING_PRECISION.load(AtomicOrdering::SeqCst)
}

/// Ordered real field with the elementary functions the numeric layer needs.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn to_f64(&self) -> f64;

    fn pi() -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn abs(&self) -> Self;

    /// Relative machine epsilon of the working precision.
    fn epsilon() -> Self;
    /// Number of significant bits.
    fn precision_bits() -> usize;

    fn from_rational(r: &BigRational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    fn powf(&self, e: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        (e.clone() * self.ln()).exp()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn precision_bits() -> usize {
        53
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
}

/// Arbitrary precision real number.
#[derive(Clone)]
pub struct BigReal(BigFloat);

impl BigReal {
    pub fn with_precision(x: f64, bits: usize) -> Self {
        BigReal(BigFloat::from_f64(x, bits))
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    pub fn precision(&self) -> usize {
        self.0.precision().unwrap_or_else(working_precision)
    }

    fn prec2(&self, other: &Self) -> usize {
        self.precision().max(other.precision()).max(working_precision())
    }

    fn prec1(&self) -> usize {
        self.precision().max(working_precision())
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".into();
        }
        if self.0.is_nan() {
            return "NaN".into();
        }
        let neg = self.0.is_negative();
        let a = self.abs();
        let approx = a.to_f64();
        let mut e10 = if approx.is_finite() && approx > 0.0 {
            approx.log10().floor() as i64
        } else {
            0
        };
        // scale into [10^(digits-1), 10^digits)
        let ten = BigReal::from_i64(10);
        let shift = digits as i64 - 1 - e10;
        let mut scaled = if shift >= 0 {
            a.clone() * ten.powi(shift as i32)
        } else {
            a.clone() / ten.powi((-shift) as i32)
        };
        let limit = ten.powi(digits as i32);
        if scaled >= limit {
            scaled = scaled / ten.clone();
            e10 += 1;
        }
        let mut int = scaled.to_bigint_rounded();
        let mut s = int.to_string();
        if s.len() > digits {
            int /= 10;
            e10 += 1;
            s = int.to_string();
        }
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        if e10 != 0 {
            out.push_str(&format!("e{e10}"));
        }
        out
    }

    /// Nearest integer.
    pub fn to_bigint_rounded(&self) -> BigInt {
        let half = BigReal::from_f64(0.5);
        let shifted = if self.0.is_negative() {
            self.clone() - half
        } else {
            self.clone() + half
        };
        let int = shifted.0.int();
        bigfloat_to_bigint(&int)
    }
}

fn bigfloat_to_bigint(x: &BigFloat) -> BigInt {
    let Some((words, _bits, sign, exp, _)) = x.as_raw_parts() else {
        return BigInt::zero();
    };
    if x.is_zero() || exp <= 0 {
        return BigInt::zero();
    }
    // value = 0.m * 2^exp with m stored little-endian
    let mut m = BigInt::zero();
    for w in words.iter().rev() {
        m = (m << 64) + BigInt::from(*w);
    }
    let total_bits = 64 * words.len() as i64;
    let shift = exp as i64 - total_bits;
    let mag = if shift >= 0 {
        m << (shift as usize)
    } else {
        m >> ((-shift) as usize)
    };
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

fn ldexp(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(30);
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                let p = self.prec2(&rhs);
                BigReal(self.0.$op(&rhs.0, p, RM))
            }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &'a BigReal) -> BigReal {
                let p = self.prec2(rhs);
                BigReal(self.0.$op(&rhs.0, p, RM))
            }
        }
        impl<'a, 'b> $tr<&'b BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &'b BigReal) -> BigReal {
                let p = self.prec2(rhs);
                BigReal(self.0.$op(&rhs.0, p, RM))
            }
        }
    };
}

bin_op!(Add, add, add);
bin_op!(Sub, sub, sub);
bin_op!(Mul, mul, mul);
bin_op!(Div, div, div);

impl Rem for BigReal {
    type Output = BigReal;
    fn rem(self, rhs: BigReal) -> BigReal {
        BigReal(self.0.rem(&rhs.0))
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(self.0.neg())
    }
}

impl<'a> Neg for &'a BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(self.0.clone().neg())
    }
}

impl AddAssign for BigReal {
    fn add_assign(&mut self, rhs: BigReal) {
        let p = self.prec2(&rhs);
        self.0 = self.0.add(&rhs.0, p, RM);
    }
}

impl<'a> AddAssign<&'a BigReal> for BigReal {
    fn add_assign(&mut self, rhs: &'a BigReal) {
        let p = self.prec2(rhs);
        self.0 = self.0.add(&rhs.0, p, RM);
    }
}

impl SubAssign for BigReal {
    fn sub_assign(&mut self, rhs: BigReal) {
        let p = self.prec2(&rhs);
        self.0 = self.0.sub(&rhs.0, p, RM);
    }
}

impl MulAssign for BigReal {
    fn mul_assign(&mut self, rhs: BigReal) {
        let p = self.prec2(&rhs);
        self.0 = self.0.mul(&rhs.0, p, RM);
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        BigReal(BigFloat::from_u8(0, working_precision()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        BigReal(BigFloat::from_u8(1, working_precision()))
    }
}

impl Num for BigReal {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        let p = working_precision();
        let v = with_consts(|cc| BigFloat::parse(s, astro_float::Radix::Dec, p, RM, cc));
        if v.is_nan() {
            Err(format!("cannot parse {s:?} as a real number"))
        } else {
            Ok(BigReal(v))
        }
    }
}

impl Real for BigReal {
    fn from_f64(x: f64) -> Self {
        BigReal(BigFloat::from_f64(x, working_precision()))
    }
    fn from_i64(n: i64) -> Self {
        BigReal(BigFloat::from_i64(n, working_precision()))
    }
    fn from_bigint(n: &BigInt) -> Self {
        let p = working_precision();
        let (sign, digits) = n.to_u64_digits();
        let base = BigFloat::from_f64(18446744073709551616.0, p);
        let mut acc = BigFloat::from_u8(0, p);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
        }
        if sign == BigSign::Minus {
            acc = acc.neg();
        }
        BigReal(acc)
    }
    fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((words, _bits, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let n = words.len();
        let top = words[n - 1] as f64;
        let next = if n > 1 { words[n - 2] as f64 } else { 0.0 };
        let frac = top / 18446744073709551616.0 + next / 18446744073709551616.0f64.powi(2);
        let v = ldexp(frac, exp as i64);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }
    fn pi() -> Self {
        let p = working_precision();
        BigReal(with_consts(|cc| cc.pi(p, RM)))
    }
    fn exp(&self) -> Self {
        let p = self.prec1();
        BigReal(with_consts(|cc| self.0.exp(p, RM, cc)))
    }
    fn ln(&self) -> Self {
        let p = self.prec1();
        BigReal(with_consts(|cc| self.0.ln(p, RM, cc)))
    }
    fn sqrt(&self) -> Self {
        let p = self.prec1();
        BigReal(self.0.sqrt(p, RM))
    }
    fn sin(&self) -> Self {
        let p = self.prec1();
        BigReal(with_consts(|cc| self.0.sin(p, RM, cc)))
    }
    fn cos(&self) -> Self {
        let p = self.prec1();
        BigReal(with_consts(|cc| self.0.cos(p, RM, cc)))
    }
    fn atan2(&self, x: &Self) -> Self {
        let p = self.prec2(x);
        let zero = BigReal::zero();
        if x.is_zero() {
            let half_pi = BigReal::pi() / BigReal::from_i64(2);
            return if *self >= zero { half_pi } else { -half_pi };
        }
        let ratio = self.0.div(&x.0, p, RM);
        let base = BigReal(with_consts(|cc| ratio.atan(p, RM, cc)));
        if *x > zero {
            base
        } else if *self >= zero {
            base + BigReal::pi()
        } else {
            base - BigReal::pi()
        }
    }
    fn powi(&self, n: i32) -> Self {
        let p = self.prec1();
        let pos = BigReal(self.0.powi(n.unsigned_abs() as usize, p, RM));
        if n < 0 {
            BigReal::one() / pos
        } else {
            pos
        }
    }
    fn abs(&self) -> Self {
        BigReal(self.0.abs())
    }
    fn epsilon() -> Self {
        let p = working_precision();
        BigReal::from_f64(2.0).powi(-(p as i32) + 1)
    }
    fn precision_bits() -> usize {
        working_precision()
    }
    fn powf(&self, e: &Self) -> Self {
        if self.is_zero() {
            return BigReal::zero();
        }
        let p = self.prec2(e);
        BigReal(with_consts(|cc| self.0.pow(&e.0, p, RM, cc)))
    }
}

/// Convenience: `T::from_i64(n) / T::from_i64(d)`.
pub fn ratio<T: Real>(n: i64, d: i64) -> T {
    T::from_i64(n) / T::from_i64(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_f64() {
        for x in [1.0, -2.5, 1e-30, std::f64::consts::PI, 123456789.0] {
            let b = BigReal::from_f64(x);
            assert_eq!(b.to_f64(), x);
        }
    }

    #[test]
    fn pi_digits() {
        let pi = BigReal::pi();
        assert!(pi.to_decimal(40).starts_with("3.14159265358979323846264338327950288419"));
    }

    #[test]
    fn bigint_roundtrip() {
        let n: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let b = BigReal::from_bigint(&n);
        assert_eq!(b.to_bigint_rounded(), n);
    }

    #[test]
    fn atan2_quadrants() {
        let y = BigReal::from_f64(1.0);
        let x = BigReal::from_f64(-1.0);
        let a = y.atan2(&x).to_f64();
        assert!((a - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn exp_ln_inverse() {
        let x = BigReal::from_f64(2.75);
        let y = x.ln().exp();
        assert!((y - x).abs() < BigReal::epsilon() * BigReal::from_i64(16));
    }
}
