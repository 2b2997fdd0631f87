//! Numerical differentiation: Taylor coefficients from symmetric stencils, and
//! the Maass operators applied to a function of τ through a finite-difference jet.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::eval::cis;
use crate::real::Real;

static WEIGHTS: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<BigRational>>>>>> = OnceLock::new();

/// w[r][j + n]: the coefficient of t^r in the Lagrange basis polynomial of node j ∈ [-n, n].
pub fn taylor_weights(n: usize) -> Arc<Vec<Vec<BigRational>>> {
    let cache = WEIGHTS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(w) = cache.lock().unwrap().get(&n) {
        return w.clone();
    }
    let nodes: Vec<i64> = (-(n as i64)..=n as i64).collect();
    let m = nodes.len();
    let mut w = vec![vec![BigRational::zero(); m]; m];
    for (jj, &j) in nodes.iter().enumerate() {
        let mut poly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for &i in &nodes {
            if i == j {
                continue;
            }
            // multiply by (t - i)
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(i.into());
            }
            poly = next;
            denom *= BigRational::from_integer((j - i).into());
        }
        for (r, c) in poly.into_iter().enumerate() {
            w[r][jj] = c / &denom;
        }
    }
    let w = Arc::new(w);
    cache.lock().unwrap().insert(n, w.clone());
    w
}

/// Taylor coefficients f^{(r)}(x₀)/r!, r = 0..=rmax, from the (2n+1)-point stencil of step h.
pub fn taylor_coeffs<T: Real>(
    f: impl Fn(&T) -> Complex<T>,
    x0: &T,
    h: &T,
    n: usize,
    rmax: usize,
) -> Vec<Complex<T>> {
    assert!(rmax <= 2 * n, "stencil too small for the requested order");
    let w = taylor_weights(n);
    let samples: Vec<Complex<T>> = (-(n as i64)..=n as i64)
        .map(|j| f(&(x0.clone() + h.clone() * T::from_i64(j))))
        .collect();
    let mut out = Vec::with_capacity(rmax + 1);
    let mut hpow = T::one();
    for row in w.iter().take(rmax + 1) {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (c, s) in row.iter().zip(&samples) {
            if !c.is_zero() {
                acc = acc + s.clone() * T::from_rational(c);
            }
        }
        out.push(acc / hpow.clone());
        hpow = hpow * h.clone();
    }
    out
}

/// Step for a (2n+1)-point stencil, relative to `scale`.
pub fn default_step<T: Real>(n: usize, scale: &T) -> T {
    let e = 1.0 / (2 * n + 1) as f64;
    let rel = T::epsilon().to_f64().powf(e);
    scale.clone() * T::from_f64(rel)
}

/// Value and first/second partial derivatives of a function of τ at one point.
#[derive(Clone, Debug)]
pub struct Jet<T: Real> {
    pub v: T,
    pub f: Complex<T>,
    pub fu: Complex<T>,
    pub fv: Complex<T>,
    pub fuu: Complex<T>,
    pub fvv: Complex<T>,
}

fn times_i<T: Real>(z: Complex<T>) -> Complex<T> {
    Complex::new(-z.im, z.re)
}

impl<T: Real> Jet<T> {
    /// Finite-difference jet with 7-point stencils along u and v.
    pub fn of(f: impl Fn(&Complex<T>) -> Complex<T>, tau: &Complex<T>) -> Self {
        let scale = if tau.im > T::one() { T::one() } else { tau.im.clone() };
        let h = default_step::<T>(3, &scale);
        let along_u = taylor_coeffs(|u: &T| f(&Complex::new(u.clone(), tau.im.clone())), &tau.re, &h, 3, 2);
        let along_v = taylor_coeffs(|v: &T| f(&Complex::new(tau.re.clone(), v.clone())), &tau.im, &h, 3, 2);
        let two = T::from_i64(2);
        Jet {
            v: tau.im.clone(),
            f: along_u[0].clone(),
            fu: along_u[1].clone(),
            fv: along_v[1].clone(),
            fuu: along_u[2].clone() * two.clone(),
            fvv: along_v[2].clone() * two,
        }
    }

    /// L_k f = -i v² f_u + v² f_v (independent of k).
    pub fn lower(&self) -> Complex<T> {
        let v2 = self.v.clone() * self.v.clone();
        (self.fv.clone() - times_i(self.fu.clone())) * v2
    }

    /// R_k f = i f_u + f_v + (k/v) f.
    pub fn raise(&self, k: i64) -> Complex<T> {
        times_i(self.fu.clone()) + self.fv.clone() + self.f.clone() * (T::from_i64(k) / self.v.clone())
    }

    /// Δ_k f = -v²(f_uu + f_vv) + i k v (f_u + i f_v).
    pub fn laplacian(&self, k: i64) -> Complex<T> {
        let v2 = self.v.clone() * self.v.clone();
        let lap = (self.fuu.clone() + self.fvv.clone()) * v2;
        let first = self.fu.clone() + times_i(self.fv.clone());
        times_i(first) * (T::from_i64(k) * self.v.clone()) - lap
    }

    /// ξ_k f = v^{k-2} conj(L_k f).
    pub fn xi(&self, k: i64) -> Complex<T> {
        self.lower().conj() * self.v.powi((k - 2) as i32)
    }
}

/// e(x) = e^{2πix}.
pub fn e_of<T: Real>(x: &T) -> Complex<T> {
    cis(&(T::pi() * T::from_i64(2) * x.clone()))
}
