//! Special functions over any [`Real`]: Γ, ψ, Hurwitz ζ and its s-derivative,
//! Euler's constant, the exponential integral E₁ and Kummer's M.

use crate::arith::bernoulli;
use crate::real::Real;

fn em_params<T: Real>() -> (usize, usize) {
    let bits = T::precision_bits();
    ((bits / 2).max(12), (bits / 4).max(8))
}

fn b2k<T: Real>(k: usize) -> T {
    T::from_rational(&bernoulli(2 * k))
}

/// Euler–Mascheroni constant.
pub fn euler_gamma<T: Real>() -> T {
    let (n, kmax) = em_params::<T>();
    let nn = T::from_i64(n as i64);
    let mut h = T::zero();
    for j in 1..=n {
        h = h + T::one() / T::from_i64(j as i64);
    }
    let mut g = h - nn.ln() - T::one() / (T::from_i64(2) * nn.clone());
    let n2 = nn.clone() * nn.clone();
    let mut npow = n2.clone();
    for k in 1..=kmax {
        g = g + b2k::<T>(k) / (T::from_i64(2 * k as i64) * npow.clone());
        npow = npow * n2.clone();
    }
    g
}

/// Hurwitz zeta ζ(s, a) for real s ≠ 1 and a > 0, together with ∂ζ/∂s.
pub fn hurwitz_zeta_with_derivative<T: Real>(s: &T, a: &T) -> (T, T) {
    let (n, kmax) = em_params::<T>();
    let one = T::one();
    let mut z = T::zero();
    let mut dz = T::zero();
    for j in 0..n {
        let x = a.clone() + T::from_i64(j as i64);
        let lx = x.ln();
        let t = (-(s.clone()) * lx.clone()).exp();
        dz = dz - lx * t.clone();
        z = z + t;
    }
    let x = a.clone() + T::from_i64(n as i64);
    let lx = x.ln();
    let sm1 = s.clone() - one.clone();
    let x1ms = (-(sm1.clone()) * lx.clone()).exp();
    z = z + x1ms.clone() / sm1.clone();
    dz = dz - lx.clone() * x1ms.clone() / sm1.clone() - x1ms.clone() / (sm1.clone() * sm1.clone());
    let xms = x1ms / x.clone();
    z = z + xms.clone() / T::from_i64(2);
    dz = dz - lx.clone() * xms.clone() / T::from_i64(2);
    // Bernoulli tail: B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}
    let mut poch = s.clone();
    let mut dpoch = one.clone();
    let mut xpow = xms / x.clone();
    let mut fact = T::from_i64(2);
    let x2 = x.clone() * x.clone();
    for k in 1..=kmax {
        let b = b2k::<T>(k) / fact.clone();
        z = z + b.clone() * poch.clone() * xpow.clone();
        dz = dz + b * (dpoch.clone() - poch.clone() * lx.clone()) * xpow.clone();
        let s1 = s.clone() + T::from_i64(2 * k as i64 - 1);
        let s2 = s.clone() + T::from_i64(2 * k as i64);
        dpoch = dpoch * s1.clone() * s2.clone() + poch.clone() * (s1.clone() + s2.clone());
        poch = poch * s1 * s2;
        xpow = xpow / x2.clone();
        fact = fact * T::from_i64((2 * k + 1) as i64) * T::from_i64((2 * k + 2) as i64);
    }
    (z, dz)
}

pub fn hurwitz_zeta<T: Real>(s: &T, a: &T) -> T {
    hurwitz_zeta_with_derivative(s, a).0
}

pub fn zeta<T: Real>(s: &T) -> T {
    hurwitz_zeta(s, &T::one())
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma<T: Real>(x: &T) -> T {
    let (n, kmax) = em_params::<T>();
    let mut shift = T::zero();
    let mut prod_log = T::zero();
    let mut y = x.clone();
    let target = T::from_i64(n as i64);
    while y < target {
        prod_log = prod_log + y.ln();
        y = y + T::one();
        shift = shift + T::one();
    }
    let half = T::from_f64(0.5);
    let two_pi = T::from_i64(2) * T::pi();
    let mut s = (y.clone() - half.clone()) * y.ln() - y.clone() + half * two_pi.ln();
    let y2 = y.clone() * y.clone();
    let mut ypow = y.clone();
    for k in 1..=kmax {
        let kk = 2 * k as i64;
        s = s + b2k::<T>(k) / (T::from_i64(kk * (kk - 1)) * ypow.clone());
        ypow = ypow * y2.clone();
    }
    s - prod_log
}

/// Γ(x) for real x not a nonpositive integer.
pub fn gamma<T: Real>(x: &T) -> T {
    if *x < T::from_f64(0.5) {
        let pi = T::pi();
        let s = (pi.clone() * x.clone()).sin();
        return pi / (s * gamma(&(T::one() - x.clone())));
    }
    ln_gamma(x).exp()
}

/// Digamma ψ(x) for x > 0.
pub fn digamma<T: Real>(x: &T) -> T {
    let (n, kmax) = em_params::<T>();
    let mut acc = T::zero();
    let mut y = x.clone();
    let target = T::from_i64(n as i64);
    while y < target {
        acc = acc - T::one() / y.clone();
        y = y + T::one();
    }
    let mut s = y.ln() - T::one() / (T::from_i64(2) * y.clone());
    let y2 = y.clone() * y.clone();
    let mut ypow = y2.clone();
    for k in 1..=kmax {
        s = s - b2k::<T>(k) / (T::from_i64(2 * k as i64) * ypow.clone());
        ypow = ypow * y2.clone();
    }
    s + acc
}

/// Exponential integral E₁(x) = Γ(0, x) for x > 0.
pub fn exp_integral_e1<T: Real>(x: &T) -> T {
    let eps = T::epsilon();
    if *x < T::from_i64(2) {
        let mut sum = T::zero();
        let mut term = T::one();
        let mut n = 1i64;
        loop {
            term = -(term * x.clone()) / T::from_i64(n);
            let add = term.clone() / T::from_i64(n);
            sum = sum + add.clone();
            if add.abs() < eps.clone() * sum.abs() || n > 100_000 {
                break;
            }
            n += 1;
        }
        return -euler_gamma::<T>() - x.ln() - sum;
    }
    // modified Lentz for e^{-x} / (x+1 - 1/(x+3 - 4/(x+5 - ...)))
    let tiny = T::epsilon() * T::epsilon();
    let mut b = x.clone() + T::one();
    let mut c = T::one() / tiny.clone();
    let mut d = T::one() / b.clone();
    let mut h = d.clone();
    for i in 1..200_000i64 {
        let an = -T::from_i64(i * i);
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
    h * (-(x.clone())).exp()
}

/// Upper incomplete gamma Γ(s, x) for integer s and x > 0.
pub fn upper_gamma_int<T: Real>(s: i64, x: &T) -> T {
    if s > 0 {
        // (s-1)! e^{-x} Σ_{j<s} x^j / j!
        let mut term = T::one();
        let mut sum = T::one();
        for j in 1..s {
            term = term * x.clone() / T::from_i64(j);
            sum = sum + term.clone();
        }
        let mut fact = T::one();
        for j in 1..s {
            fact = fact * T::from_i64(j);
        }
        return fact * sum * (-(x.clone())).exp();
    }
    // Γ(s, x) = (Γ(s+1, x) - x^s e^{-x}) / s
    let mut g = exp_integral_e1(x);
    let ex = (-(x.clone())).exp();
    let mut j = 0i64;
    while j > s {
        let sj = j - 1;
        g = (g - x.powi(sj as i32) * ex.clone()) / T::from_i64(sj);
        j -= 1;
    }
    g
}

/// Kummer's confluent hypergeometric function M(a, b, x) by its power series.
pub fn kummer_m<T: Real>(a: &T, b: &T, x: &T) -> T {
    let eps = T::epsilon();
    let mut term = T::one();
    let mut sum = T::one();
    let mut n = 0i64;
    loop {
        let nn = T::from_i64(n);
        term = term * (a.clone() + nn.clone()) / (b.clone() + nn.clone()) * x.clone()
            / T::from_i64(n + 1);
        sum = sum + term.clone();
        n += 1;
        if (term.abs() <= eps.clone() * sum.abs() && n > 2) || n > 1_000_000 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::BigReal;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn euler_constant() {
        let g: BigReal = euler_gamma();
        assert!(g.to_decimal(50).starts_with("5.772156649015328606065120900824024310421593359399"));
        assert!(close(euler_gamma::<f64>(), 0.5772156649015329, 1e-15));
    }

    #[test]
    fn zeta_values() {
        let z3: BigReal = zeta(&BigReal::from_i64(3));
        assert!(z3.to_decimal(50).starts_with("1.202056903159594285399738161511449990764986"));
        let z2: f64 = zeta(&2.0);
        assert!(close(z2, std::f64::consts::PI.powi(2) / 6.0, 1e-14));
        let zh: f64 = zeta(&0.5);
        assert!(close(zh, -1.4603545088095868, 1e-13));
    }

    #[test]
    fn zeta_derivative_matches_difference() {
        let s = 2.5f64;
        let h = 1e-5;
        let (_, d) = hurwitz_zeta_with_derivative(&s, &0.3);
        let fd = (hurwitz_zeta(&(s + h), &0.3) - hurwitz_zeta(&(s - h), &0.3)) / (2.0 * h);
        assert!(close(d, fd, 1e-8));
    }

    #[test]
    fn gamma_values() {
        assert!(close(gamma(&5.0f64), 24.0, 1e-14));
        assert!(close(gamma(&0.5f64), std::f64::consts::PI.sqrt(), 1e-14));
        assert!(close(gamma(&-1.5f64), 4.0 * std::f64::consts::PI.sqrt() / 3.0, 1e-13));
        let g: BigReal = gamma(&BigReal::from_f64(0.5));
        let sp = BigReal::pi().sqrt();
        assert!((g - sp).abs() < BigReal::from_f64(1e-70));
    }

    #[test]
    fn digamma_values() {
        assert!(close(digamma(&1.0f64), -0.5772156649015329, 1e-14));
        assert!(close(digamma(&0.5f64), -1.9635100260214235, 1e-14));
    }

    #[test]
    fn e1_values() {
        assert!(close(exp_integral_e1(&1.0f64), 0.21938393439552029, 1e-14));
        assert!(close(exp_integral_e1(&5.0f64), 0.0011482955912753257, 1e-13));
        let a: BigReal = exp_integral_e1(&BigReal::from_f64(1.99));
        let b: BigReal = exp_integral_e1(&BigReal::from_f64(2.01));
        assert!((a.to_f64() - b.to_f64()).abs() < 2e-3);
    }

    #[test]
    fn incomplete_gamma_integer() {
        // Γ(3, 2) = 2 e^{-2}(1 + 2 + 2) = 10 e^{-2}
        assert!(close(upper_gamma_int(3, &2.0f64), 10.0 * (-2.0f64).exp(), 1e-14));
        // Γ(-1, x) = E1 relation: e^{-x}/x - E1(x)
        let x = 1.5f64;
        assert!(close(upper_gamma_int(-1, &x), (-x).exp() / x - exp_integral_e1(&x), 1e-14));
    }

    #[test]
    fn kummer_closed_form() {
        // M(1, 2, x) = (e^x - 1)/x
        let x = 3.0f64;
        assert!(close(kummer_m(&1.0, &2.0, &x), (x.exp() - 1.0) / x, 1e-14));
    }
}
