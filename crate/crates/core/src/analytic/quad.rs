//! Quadrature: Gauss–Legendre, and double-exponential rules on [0, ∞) and [a, b].
//!
//! Node tables are cached per scalar type and precision.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::real::Real;

type Key = (&'static str, TypeId, usize, usize);

static CACHE: OnceLock<Mutex<HashMap<Key, Box<dyn Any + Send + Sync>>>> = OnceLock::new();

fn cached<T: Real, V: Send + Sync + 'static>(tag: &'static str, idx: usize, make: impl FnOnce() -> V) -> Arc<V> {
    let key = (tag, TypeId::of::<T>(), T::precision_bits(), idx);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.downcast_ref::<Arc<V>>().expect("cache type").clone();
    }
    let v = Arc::new(make());
    cache.lock().unwrap().insert(key, Box::new(v.clone()));
    v
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre<T: Real>(n: usize) -> Arc<Vec<(T, T)>> {
    cached::<T, _>("gl", n, || {
        let eps = T::epsilon();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = T::from_f64(guess);
            let mut dp = T::one();
            for _ in 0..100 {
                // P_n(x) and P_n'(x) by the three-term recurrence
                let mut p0 = T::one();
                let mut p1 = x.clone();
                for j in 2..=n {
                    let jj = T::from_i64(j as i64);
                    let p2 = (T::from_i64(2 * j as i64 - 1) * x.clone() * p1.clone() - T::from_i64(j as i64 - 1) * p0) / jj;
                    p0 = p1;
                    p1 = p2;
                }
                if n == 1 {
                    p0 = T::one();
                }
                dp = T::from_i64(n as i64) * (x.clone() * p1.clone() - p0) / (x.clone() * x.clone() - T::one());
                let dx = p1 / dp.clone();
                x = x - dx.clone();
                if dx.abs() <= eps.clone() * T::from_i64(4) {
                    break;
                }
            }
            let w = T::from_i64(2) / ((T::one() - x.clone() * x.clone()) * dp.clone() * dp);
            out.push((x, w));
        }
        out
    })
}

/// ∫_a^b f by an n-point Gauss–Legendre rule on each of `pieces` subintervals.
pub fn gauss_legendre_integrate<T: Real, R, F>(a: &T, b: &T, n: usize, pieces: usize, f: F) -> R
where
    R: Clone + std::ops::Add<Output = R> + std::ops::Mul<T, Output = R>,
    F: Fn(&T) -> R,
{
    let nodes = gauss_legendre::<T>(n);
    let width = (b.clone() - a.clone()) / T::from_i64(pieces as i64);
    let half = width.clone() / T::from_i64(2);
    let mut acc: Option<R> = None;
    for p in 0..pieces {
        let mid = a.clone() + width.clone() * T::from_i64(p as i64) + half.clone();
        for (x, w) in nodes.iter() {
            let val = f(&(mid.clone() + half.clone() * x.clone())) * (w.clone() * half.clone());
            acc = Some(match acc {
                None => val,
                Some(s) => s + val,
            });
        }
    }
    acc.expect("at least one node")
}

/// Node of the half-line rule: abscissa t, ln t and the Jacobian dt/dx.
#[derive(Clone, Debug)]
pub struct HalfLineNode<T> {
    pub t: T,
    pub ln_t: T,
    pub jac: T,
}

fn half_line_range<T: Real>() -> (f64, f64) {
    let le = -T::epsilon().to_f64().ln();
    ((2.0 * le).ln() + 0.5, (4.0 * le + 200.0).ln())
}

/// Nodes of level `lvl` for t = exp(x - e^{-x}): h = 2^{-lvl}, odd multiples only for lvl > 0.
fn half_line_level<T: Real>(lvl: usize) -> Arc<Vec<HalfLineNode<T>>> {
    cached::<T, _>("exp-exp", lvl, || {
        let (lo, hi) = half_line_range::<T>();
        let h = 0.5f64.powi(lvl as i32);
        let jlo = -(lo / h).ceil() as i64;
        let jhi = (hi / h).ceil() as i64;
        let step = T::one() / T::from_i64(1i64 << lvl);
        let mut out = Vec::new();
        for j in jlo..=jhi {
            if lvl > 0 && j % 2 == 0 {
                continue;
            }
            let x = step.clone() * T::from_i64(j);
            let emx = (-x.clone()).exp();
            let ln_t = x - emx.clone();
            let t = ln_t.exp();
            let jac = t.clone() * (T::one() + emx);
            out.push(HalfLineNode { t, ln_t, jac });
        }
        out
    })
}

/// ∫_0^∞ f(t) dt for integrands decaying at least exponentially, by the
/// exp-exp double-exponential rule with level refinement.
pub fn half_line<T: Real>(f: impl Fn(&HalfLineNode<T>) -> T) -> T {
    let sqrt_eps = T::epsilon().sqrt();
    let mut sum = T::zero();
    let mut prev: Option<T> = None;
    for lvl in 0..=14 {
        for node in half_line_level::<T>(lvl).iter() {
            sum = sum + f(node) * node.jac.clone();
        }
        let est = sum.clone() / T::from_i64(1i64 << lvl);
        if let Some(p) = &prev {
            let diff = (est.clone() - p.clone()).abs();
            if lvl >= 3 && diff <= sqrt_eps.clone() * est.abs().max_of(T::epsilon()) {
                return est;
            }
        }
        prev = Some(est);
    }
    prev.expect("levels ran")
}

/// Node of the finite-interval rule: abscissa in (-1, 1), distances to ±1, and weight.
#[derive(Clone, Debug)]
pub struct IntervalNode<T> {
    pub x: T,
    pub to_left: T,
    pub to_right: T,
    pub weight: T,
}

fn tanh_sinh_level<T: Real>(lvl: usize) -> Arc<Vec<IntervalNode<T>>> {
    cached::<T, _>("tanh-sinh", lvl, || {
        let le = -T::epsilon().to_f64().ln();
        let xmax = (2.0 * le / std::f64::consts::PI).asinh() + 0.2;
        let h = 0.5f64.powi(lvl as i32);
        let jmax = (xmax / h).ceil() as i64;
        let step = T::one() / T::from_i64(1i64 << lvl);
        let half_pi = T::pi() / T::from_i64(2);
        let mut out = Vec::new();
        for j in -jmax..=jmax {
            if lvl > 0 && j % 2 == 0 {
                continue;
            }
            let x = step.clone() * T::from_i64(j);
            let ex = x.exp();
            let sinh = (ex.clone() - T::one() / ex.clone()) / T::from_i64(2);
            let cosh = (ex.clone() + T::one() / ex) / T::from_i64(2);
            let y = half_pi.clone() * sinh;
            let e2y = (y.clone() * T::from_i64(2)).exp();
            // 1 - tanh y = 2/(e^{2y}+1), 1 + tanh y = 2e^{2y}/(e^{2y}+1)
            let to_right = T::from_i64(2) / (e2y.clone() + T::one());
            let to_left = T::from_i64(2) * e2y.clone() / (e2y.clone() + T::one());
            let xx = T::one() - to_right.clone();
            let ey = y.exp();
            let ch = (ey.clone() + T::one() / ey) / T::from_i64(2);
            let weight = half_pi.clone() * cosh / (ch.clone() * ch);
            out.push(IntervalNode { x: xx, to_left, to_right, weight });
        }
        out
    })
}

/// ∫_{-1}^{1} f by the tanh-sinh rule; endpoint singularities are tolerated.
pub fn tanh_sinh<T: Real>(f: impl Fn(&IntervalNode<T>) -> T) -> T {
    let sqrt_eps = T::epsilon().sqrt();
    let mut sum = T::zero();
    let mut prev: Option<T> = None;
    for lvl in 0..=14 {
        for node in tanh_sinh_level::<T>(lvl).iter() {
            if node.to_left.is_zero() || node.to_right.is_zero() {
                continue;
            }
            sum = sum + f(node) * node.weight.clone();
        }
        let est = sum.clone() / T::from_i64(1i64 << lvl);
        if let Some(p) = &prev {
            let diff = (est.clone() - p.clone()).abs();
            if lvl >= 3 && diff <= sqrt_eps.clone() * est.abs().max_of(T::epsilon()) {
                return est;
            }
        }
        prev = Some(est);
    }
    prev.expect("levels ran")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::BigReal;
    use num_traits::{One, Zero};

    #[test]
    fn legendre_integrates_polynomials() {
        let v: f64 = gauss_legendre_integrate(&0.0, &2.0, 5, 1, |x: &f64| x.powi(9));
        assert!((v - 2f64.powi(10) / 10.0).abs() < 1e-10);
        let v: BigReal = gauss_legendre_integrate(&BigReal::zero(), &BigReal::one(), 20, 2, |x: &BigReal| x.exp());
        let e = BigReal::one().exp() - BigReal::one();
        assert!((v - e).abs().to_f64() < 1e-60);
    }

    #[test]
    fn half_line_gamma() {
        // ∫ t^{3/2} e^{-t} = Γ(5/2) = 3√π/4
        let v: BigReal = half_line(|n: &HalfLineNode<BigReal>| (n.ln_t.clone() * BigReal::from_f64(1.5) - n.t.clone()).exp());
        let want = BigReal::pi().sqrt() * BigReal::from_i64(3) / BigReal::from_i64(4);
        assert!((v - want).abs().to_f64() < 1e-65);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // ∫_{-1}^1 (1-x)^{-1/2} dx = 2√2
        let v: BigReal = tanh_sinh(|n: &IntervalNode<BigReal>| BigReal::one() / n.to_right.sqrt());
        let want = BigReal::from_i64(8).sqrt();
        assert!((v - want).abs().to_f64() < 1e-60);
        let w: f64 = tanh_sinh(|n: &IntervalNode<f64>| n.x * n.x);
        assert!((w - 2.0 / 3.0).abs() < 1e-14);
    }
}
