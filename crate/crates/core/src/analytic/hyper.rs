//! Incomplete gamma, W_k, β_k, Whittaker M and the confluent hypergeometric Ψ.

use super::quad::{half_line, HalfLineNode};
use super::special::{gamma, kummer_m, upper_gamma_int};
use crate::error::{Error, Result};
use crate::real::Real;

fn is_integer<T: Real>(x: &T) -> Option<i64> {
    let r = x.to_f64().round();
    if r.abs() < 1e15 && (x.clone() - T::from_f64(r)).abs() <= T::epsilon() * T::from_i64(16) * x.abs().max_of(T::one()) {
        Some(r as i64)
    } else {
        None
    }
}

/// 1/Γ(x), entire in x.
pub fn rgamma<T: Real>(x: &T) -> T {
    if let Some(n) = is_integer(x) {
        if n <= 0 {
            return T::zero();
        }
    }
    if *x < T::from_f64(0.5) {
        let pi = T::pi();
        return (pi.clone() * x.clone()).sin() * gamma(&(T::one() - x.clone())) / pi;
    }
    T::one() / gamma(x)
}

/// Upper incomplete gamma Γ(s, x) for real s and x > 0.
pub fn upper_gamma<T: Real>(s: &T, x: &T) -> Result<T> {
    if !(*x > T::zero()) {
        return Err(Error::Domain("Γ(s, x) needs x > 0".into()));
    }
    if let Some(n) = is_integer(s) {
        return Ok(upper_gamma_int(n, x));
    }
    let eps = T::epsilon();
    if *x < s.clone() + T::one() {
        // Γ(s) - x^s e^{-x} Σ x^n / (s)_{n+1}
        let mut term = T::one() / s.clone();
        let mut sum = term.clone();
        let mut n = 1i64;
        loop {
            term = term * x.clone() / (s.clone() + T::from_i64(n));
            sum = sum + term.clone();
            if term.abs() <= eps.clone() * sum.abs() || n > 100_000 {
                break;
            }
            n += 1;
        }
        let lower = sum * (s.clone() * x.ln() - x.clone()).exp();
        return Ok(gamma(s) - lower);
    }
    // continued fraction for e^{x} x^{-s} Γ(s, x)
    let tiny = eps.clone() * eps.clone();
    let mut b = x.clone() + T::one() - s.clone();
    let mut c = T::one() / tiny.clone();
    let mut d = T::one() / b.clone();
    let mut h = d.clone();
    for i in 1..200_000i64 {
        let an = -T::from_i64(i) * (T::from_i64(i) - s.clone());
        b = b + T::from_i64(2);
        d = an.clone() * d + b.clone();
        if d.abs() < tiny {
            d = tiny.clone();
        }
        c = b.clone() + an / c;
        if c.abs() < tiny {
            c = tiny.clone();
        }
        d = T::one() / d;
        let del = c.clone() * d.clone();
        h = h * del.clone();
        if (del - T::one()).abs() < eps {
            break;
        }
    }
    Ok(h * (s.clone() * x.ln() - x.clone()).exp())
}

/// Exponential integral Ei(x) for x > 0.
pub fn ei<T: Real>(x: &T) -> T {
    let eps = T::epsilon();
    let mut term = T::one();
    let mut sum = T::zero();
    let mut n = 1i64;
    loop {
        term = term * x.clone() / T::from_i64(n);
        let add = term.clone() / T::from_i64(n);
        sum = sum + add.clone();
        if (add.abs() <= eps.clone() * sum.abs() && T::from_i64(n) > *x) || n > 1_000_000 {
            break;
        }
        n += 1;
    }
    super::special::euler_gamma::<T>() + x.ln() + sum
}

/// W_k(x) = Re Γ(1-k, -2x) for integer k and real x ≠ 0.
pub fn w_k<T: Real>(k: i64, x: &T) -> Result<T> {
    if x.is_zero() {
        return Err(Error::Domain("W_k is not defined at 0".into()));
    }
    let s = 1 - k;
    if *x < T::zero() {
        return Ok(upper_gamma_int(s, &(-(x.clone()) * T::from_i64(2))));
    }
    let y = -(x.clone()) * T::from_i64(2);
    let ey = (-(y.clone())).exp();
    if s >= 1 {
        let mut term = T::one();
        let mut sum = T::one();
        let mut fact = T::one();
        for j in 1..s {
            term = term * y.clone() / T::from_i64(j);
            sum = sum + term.clone();
            fact = fact * T::from_i64(j);
        }
        return Ok(fact * sum * ey);
    }
    // Re Γ(0, y) = -Ei(-y) for y < 0, then Γ(j-1, y) = (Γ(j, y) - y^{j-1} e^{-y})/(j-1)
    let mut g = -ei(&(-(y.clone())));
    let mut j = 0i64;
    while j > s {
        let sj = j - 1;
        g = (g - y.powi(sj as i32) * ey.clone()) / T::from_i64(sj);
        j -= 1;
    }
    Ok(g)
}

/// β_k(x) = W_k(-x/2) = Γ(1-k, x).
pub fn beta_k<T: Real>(k: i64, x: &T) -> Result<T> {
    w_k(k, &(-(x.clone()) / T::from_i64(2)))
}

/// Whittaker M_{κ,μ}(x) = e^{-x/2} x^{μ+1/2} M(μ-κ+1/2, 1+2μ, x), x > 0.
pub fn whittaker_m<T: Real>(kappa: &T, mu: &T, x: &T) -> Result<T> {
    if !(*x > T::zero()) {
        return Err(Error::Domain("Whittaker M needs x > 0".into()));
    }
    let b = T::one() + mu.clone() * T::from_i64(2);
    if let Some(n) = is_integer(&b) {
        if n <= 0 {
            return Err(Error::Domain("1 + 2μ is a nonpositive integer".into()));
        }
    }
    let half = T::from_f64(0.5);
    let a = mu.clone() - kappa.clone() + half.clone();
    let pre = ((mu.clone() + half.clone()) * x.ln() - x.clone() * half).exp();
    Ok(pre * kummer_m(&a, &b, x))
}

/// Ψ(a, b; z) for a ≥ 1 from its integral, substituting t = w/z.
fn psi_quad<T: Real>(a: &T, b: &T, z: &T) -> T {
    let am1 = a.clone() - T::one();
    let c = b.clone() - a.clone() - T::one();
    let zinv = T::one() / z.clone();
    let integral = half_line(|n: &HalfLineNode<T>| {
        let l1p = (T::one() + n.t.clone() * zinv.clone()).ln();
        (am1.clone() * n.ln_t.clone() - n.t.clone() + c.clone() * l1p).exp()
    });
    integral * rgamma(a) * (-(a.clone()) * z.ln()).exp()
}

/// Confluent hypergeometric function of the second kind,
/// Ψ(a,b;z) = Γ(a)^{-1} ∫_0^∞ e^{-zt} (1+t)^{b-a-1} t^{a-1} dt, continued to all real a
/// by the three-term recurrence in a (so Ψ(0,b;z) = 1).
pub fn psi_chf<T: Real>(a: &T, b: &T, z: &T) -> Result<T> {
    if !(*z > T::zero()) {
        return Err(Error::Domain("Ψ(a,b;z) needs z > 0".into()));
    }
    if a.is_zero() {
        return Ok(T::one());
    }
    if *a >= T::one() {
        return Ok(psi_quad(a, b, z));
    }
    let n = (1.0 - a.to_f64()).ceil().max(1.0) as i64;
    let top = a.clone() + T::from_i64(n);
    // U(c-1) = -(b - 2c - z) U(c) - c(c - b + 1) U(c+1)
    let mut u_hi = psi_quad(&(top.clone() + T::one()), b, z);
    let mut u = psi_quad(&top, b, z);
    let mut c = top;
    for _ in 0..n {
        let two_c = c.clone() * T::from_i64(2);
        let next = -(b.clone() - two_c - z.clone()) * u.clone()
            - c.clone() * (c.clone() - b.clone() + T::one()) * u_hi;
        u_hi = u;
        u = next;
        c = c - T::one();
    }
    Ok(u)
}
