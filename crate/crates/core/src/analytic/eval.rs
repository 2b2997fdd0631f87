//! Point evaluation of expansions.

use num_complex::Complex;
use num_traits::{One, Signed};

use super::special::exp_integral_e1;
use crate::coeffring::Scalar;
use crate::error::{Error, Result};
use crate::mfexp::{Expansion, TermKey, Q};
use crate::real::Real;

/// A point τ = u + iv of the upper half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T: Real> {
    pub u: T,
    pub v: T,
}

impl<T: Real> Point<T> {
    pub fn new(u: T, v: T) -> Result<Self> {
        if !(v > T::zero()) {
            return Err(Error::Domain("the point must have positive imaginary part".into()));
        }
        Ok(Point { u, v })
    }

    pub fn from_f64(u: f64, v: f64) -> Result<Self> {
        Self::new(T::from_f64(u), T::from_f64(v))
    }

    pub fn tau(&self) -> Complex<T> {
        Complex::new(self.u.clone(), self.v.clone())
    }

    pub fn from_tau(t: &Complex<T>) -> Result<Self> {
        Self::new(t.re.clone(), t.im.clone())
    }
}

/// Value with a heuristic bound for the omitted tail.
#[derive(Clone, Debug)]
pub struct Evaluated<T: Real> {
    pub value: Complex<T>,
    pub tail: f64,
}

fn q_to<T: Real>(x: &Q) -> T {
    T::from_i64(*x.numer()) / T::from_i64(*x.denom())
}

/// e^{iθ}.
pub fn cis<T: Real>(theta: &T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Value of a single term (coefficient excluded) at τ.
pub fn term_value<T: Real>(key: &TermKey, p: &Point<T>) -> Complex<T> {
    let two_pi = T::pi() * T::from_i64(2);
    let phase = cis(&(two_pi.clone() * q_to::<T>(&key.u_freq) * p.u.clone()));
    let mut real = (-(two_pi.clone() * q_to::<T>(&key.v_decay) * p.v.clone())).exp();
    if key.u_pow > 0 {
        real = real * p.u.powi(key.u_pow as i32);
    }
    if key.v_pow != 0 {
        real = real * p.v.powi(key.v_pow as i32);
    }
    if key.log_pow > 0 {
        real = real * p.v.ln().powi(key.log_pow as i32);
    }
    if let Some(g) = &key.gamma {
        debug_assert_eq!(g.s, 0);
        let x = T::from_i64(2) * two_pi * q_to::<T>(&g.lambda) * p.v.clone();
        real = real * exp_integral_e1(&x);
    }
    Complex::new(phase.re * real.clone(), phase.im * real)
}

/// Numeric value of an expansion at τ.
pub fn eval_expansion<C: Scalar, T: Real>(f: &Expansion<C>, p: &Point<T>) -> Result<Evaluated<T>> {
    let mut value = Complex::new(T::zero(), T::zero());
    let mut edge = 0.0f64;
    let trunc = f.trunc();
    for (key, c) in f.terms() {
        let t = term_value(key, p) * c.to_complex::<T>();
        if let Some(m) = trunc {
            if key.u_freq.abs() >= m - Q::one() {
                edge = edge.max(t.norm_sqr().to_f64().sqrt());
            }
        }
        value = value + t;
    }
    let tail = match trunc {
        None => 0.0,
        Some(_) => {
            let r = (-2.0 * std::f64::consts::PI * p.v.to_f64()).exp();
            edge * r / (1.0 - r)
        }
    };
    Ok(Evaluated { value, tail })
}

/// Evaluates each component of a vector-valued form.
pub fn eval_components<C: Scalar, T: Real>(
    parts: &[Expansion<C>],
    p: &Point<T>,
) -> Result<(Vec<Complex<T>>, f64)> {
    let mut tail = 0.0f64;
    let mut out = Vec::with_capacity(parts.len());
    for f in parts {
        let e = eval_expansion(f, p)?;
        tail = tail.max(e.tail);
        out.push(e.value);
    }
    Ok((out, tail))
}

/// |z| as f64.
pub fn abs_f64<T: Real>(z: &Complex<T>) -> f64 {
    z.norm_sqr().to_f64().sqrt()
}

pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Integer power of a complex number.
pub fn cpowi<T: Real>(z: &Complex<T>, n: i64) -> Complex<T> {
    if n < 0 {
        let inv = Complex::new(T::one(), T::zero()) / z.clone();
        return cpowi(&inv, -n);
    }
    let mut base = z.clone();
    let mut acc = Complex::new(T::one(), T::zero());
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// Möbius action of an integer matrix.
pub fn mobius<T: Real>(g: [i64; 4], tau: &Complex<T>) -> Complex<T> {
    let [a, b, c, d] = g;
    let num = tau.clone() * T::from_i64(a) + Complex::new(T::from_i64(b), T::zero());
    let den = tau.clone() * T::from_i64(c) + Complex::new(T::from_i64(d), T::zero());
    num / den
}

/// Automorphy factor cτ + d.
pub fn j_factor<T: Real>(g: [i64; 4], tau: &Complex<T>) -> Complex<T> {
    tau.clone() * T::from_i64(g[2]) + Complex::new(T::from_i64(g[3]), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coeffring::ExactCoeff;
    use crate::real::BigReal;

    #[test]
    fn constant_one() {
        let f = Expansion::constant(0, ExactCoeff::one());
        let p = Point::<f64>::from_f64(0.3, 1.2).unwrap();
        let e = eval_expansion(&f, &p).unwrap();
        assert!((e.value.re - 1.0).abs() < 1e-15 && e.value.im.abs() < 1e-15);
        assert_eq!(e.tail, 0.0);
    }

    #[test]
    fn e2star_vanishes_at_i() {
        let f = catalog::e2star(40).unwrap();
        let p = Point::<BigReal>::from_f64(0.0, 1.0).unwrap();
        let e = eval_expansion(&f, &p).unwrap();
        assert!(abs_f64(&e.value) < 1e-40, "{}", abs_f64(&e.value));
    }

    #[test]
    fn delta_transforms_under_s() {
        // Δ(-1/τ) = τ¹² Δ(τ)
        let f = catalog::delta(60).unwrap();
        let tau = Complex::new(0.1f64, 0.9);
        let lhs = eval_expansion(&f, &Point::from_tau(&mobius([0, -1, 1, 0], &tau)).unwrap()).unwrap();
        let rhs = eval_expansion(&f, &Point::from_tau(&tau).unwrap()).unwrap();
        let r = rhs.value * cpowi(&tau, 12);
        assert!(abs_f64(&(lhs.value - r)) < 1e-12 * abs_f64(&r));
    }
}
