//! The non-holomorphic Eisenstein series
//! E_{r,s}(τ) = Σ_{Γ∞\SL₂(ℤ)} (cτ+d)^{-r} Im(γτ)^{(s+1-r)/2}, evaluated two ways:
//! a lattice sum with an exterior-integral tail, and the Fourier expansion in Ψ.

use num_complex::Complex;

use super::eval::cpowi;
use super::diff::e_of;
use super::hyper::{psi_chf, rgamma};
use super::quad::gauss_legendre_integrate;
use super::special::{gamma, zeta};
use crate::error::{Error, Result};
use crate::real::Real;

/// A numeric value with a heuristic error estimate.
#[derive(Clone, Debug)]
pub struct Estimate<T: Real> {
    pub value: Complex<T>,
    pub tail: f64,
    pub terms: usize,
}

fn check<T: Real>(r: i64, s: &T) -> Result<()> {
    if r % 2 != 0 {
        return Err(Error::BadParameter(format!("E_(r,s) needs even r, got {r}")));
    }
    if !(*s > T::one()) {
        return Err(Error::Domain("the Eisenstein series converges only for Re(s) > 1".into()));
    }
    Ok(())
}

fn half_integer_exponent<T: Real>(e: &T) -> Option<i32> {
    let r = e.to_f64().round();
    if (e.clone() - T::from_f64(r)).abs() <= T::epsilon() * T::from_i64(64) * e.abs().max_of(T::one()) {
        Some(r as i32)
    } else {
        None
    }
}

/// (xτ+y)^{-r} |xτ+y|^{r-σ} for real (x, y) ≠ 0.
struct Summand<T: Real> {
    r: i64,
    tau: Complex<T>,
    /// exponent of |z|², -(r_+ + σ)/2 style, precomputed
    e2: T,
    e2_int: Option<i32>,
}

impl<T: Real> Summand<T> {
    fn new(r: i64, sigma: &T, tau: &Complex<T>) -> Self {
        // z^{-r}|z|^{r-σ} = conj(z)^r |z|^{-r-σ} for r ≥ 0, z^{-r} |z|^{r-σ} for r < 0
        let e2 = if r >= 0 {
            -(T::from_i64(r) + sigma.clone()) / T::from_i64(2)
        } else {
            (T::from_i64(r) - sigma.clone()) / T::from_i64(2)
        };
        let e2_int = half_integer_exponent(&e2);
        Summand { r, tau: tau.clone(), e2, e2_int }
    }

    fn at(&self, x: &T, y: &T) -> Complex<T> {
        let re = x.clone() * self.tau.re.clone() + y.clone();
        let im = x.clone() * self.tau.im.clone();
        let n2 = re.clone() * re.clone() + im.clone() * im.clone();
        let scale = match self.e2_int {
            Some(e) => n2.powi(e),
            None => (self.e2.clone() * n2.ln()).exp(),
        };
        let z = Complex::new(re, im);
        let zr = if self.r >= 0 { cpowi(&z.conj(), self.r) } else { cpowi(&z, -self.r) };
        zr * scale
    }
}

/// E_{r,s}(τ) from the lattice sum Σ'_{(c,d)} over the box max(|c|,|d|) ≤ C with
/// trapezoidal boundary weights, plus the integral of the homogeneous summand over the
/// exterior of the box; the coset sum is the lattice sum divided by 2ζ(s+1).
pub fn eis_coset_sum<T: Real>(r: i64, s: &T, tau: &Complex<T>, cutoff: u64) -> Result<Estimate<T>> {
    check(r, s)?;
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("τ must lie in the upper half-plane".into()));
    }
    let cutoff = cutoff.max(2) as i64;
    let sigma = s.clone() + T::one();
    let g = Summand::new(r, &sigma, tau);
    let half = T::from_f64(0.5);
    let quarter = T::from_f64(0.25);
    let zero = Complex::new(T::zero(), T::zero());

    // (c, d) and (-c, -d) contribute equally: sum over c > 0 (all d) and c = 0, d > 0, doubled
    let mut total = zero.clone();
    let mut terms = 0usize;
    for d in 1..=cutoff {
        let w = if d == cutoff { half.clone() } else { T::one() };
        total = total + g.at(&T::zero(), &T::from_i64(d)) * w;
        terms += 1;
    }
    for c in 1..=cutoff {
        let x = T::from_i64(c);
        let mut row = zero.clone();
        for d in -cutoff..=cutoff {
            let edge_d = d.abs() == cutoff;
            let w = match (c == cutoff, edge_d) {
                (true, true) => quarter.clone(),
                (true, false) | (false, true) => half.clone(),
                _ => T::one(),
            };
            row = row + g.at(&x, &T::from_i64(d)) * w;
            terms += 1;
        }
        total = total + row;
    }
    total = total * T::from_i64(2);

    // exterior of C·[-1,1]²: C^{2-σ}/(σ-2) ∮ G, and the boundary is two pairs of equal edges
    let one = T::one();
    let edge = |t: &T| g.at(&one, t) + g.at(t, &one);
    let boundary: Complex<T> = gauss_legendre_integrate(&(-T::one()), &T::one(), 30, 8, edge) * T::from_i64(2);
    let cc = T::from_i64(cutoff);
    let two_minus_sigma = T::from_i64(2) - sigma.clone();
    let factor = (two_minus_sigma.clone() * cc.ln()).exp() / (sigma.clone() - T::from_i64(2));
    let exterior = boundary * factor;
    let ext_mag = exterior.norm_sqr().to_f64().sqrt();
    total = total + exterior;

    let beta = (s.clone() + T::one() - T::from_i64(r)) / T::from_i64(2);
    let pre = (beta * tau.im.ln()).exp() / (zeta(&sigma) * T::from_i64(2));
    let value = total * pre.clone();
    let tail = ext_mag * pre.to_f64() / cutoff as f64;
    Ok(Estimate { value, tail, terms })
}

/// σ_s(m) = Σ_{d|m} d^s for real s.
pub fn sigma_real<T: Real>(s: &T, m: u64) -> T {
    let mut acc = T::zero();
    for d in crate::arith::divisors(m) {
        acc = acc + (s.clone() * T::from_i64(d as i64).ln()).exp();
    }
    acc
}

/// Fourier coefficient data of E_{r,s}: the v-profile of the e(mu) mode.
pub struct EisFourier<T: Real> {
    pub r: i64,
    pub s: T,
    alpha: T,
    beta: T,
    c0: T,
    front: T,
    ra: T,
    rb: T,
}

impl<T: Real> EisFourier<T> {
    pub fn new(r: i64, s: &T) -> Result<Self> {
        check(r, s)?;
        let two = T::from_i64(2);
        let alpha = (s.clone() + T::one() + T::from_i64(r)) / two.clone();
        let beta = (s.clone() + T::one() - T::from_i64(r)) / two.clone();
        let ir = if (r / 2) % 2 == 0 { T::one() } else { -T::one() };
        let z1 = zeta(&(s.clone() + T::one()));
        let ra = rgamma(&alpha);
        let rb = rgamma(&beta);
        let two_pi = T::pi() * two.clone();
        let c0 = two_pi.clone() * ir.clone() * (-(s.clone()) * two.ln()).exp() * gamma(s) * ra.clone() * rb.clone()
            * zeta(s)
            / z1.clone();
        let front = ir * ((s.clone() + T::one()) * two_pi.ln()).exp() / z1;
        Ok(EisFourier { r, s: s.clone(), alpha, beta, c0, front, ra, rb })
    }

    /// Coefficient of e(mu) as a function of v.
    pub fn mode(&self, m: i64, v: &T) -> Result<Complex<T>> {
        let vb = (self.beta.clone() * v.ln()).exp();
        if m == 0 {
            let second = self.c0.clone() * ((self.beta.clone() - self.s.clone()) * v.ln()).exp();
            return Ok(Complex::new(vb + second, T::zero()));
        }
        let n = m.unsigned_abs();
        let (rg, a) = if m > 0 { (&self.ra, &self.beta) } else { (&self.rb, &self.alpha) };
        if rg.is_zero() {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        let z = T::pi() * T::from_i64(4 * n as i64) * v.clone();
        let psi = psi_chf(a, &(self.s.clone() + T::one()), &z)?;
        let decay = (-(z / T::from_i64(2))).exp();
        let val = self.front.clone() * sigma_real(&self.s, n) * rg.clone() * vb * psi * decay;
        Ok(Complex::new(val, T::zero()))
    }

    /// The mode profile and its first two v-derivatives, using
    /// dΨ(a,b;z)/dz = -aΨ(a+1,b+1;z).
    pub fn mode_jet(&self, m: i64, v: &T) -> Result<[T; 3]> {
        let beta = self.beta.clone();
        if m == 0 {
            let e1 = beta.clone();
            let e2 = beta.clone() - self.s.clone();
            let mut out = [T::zero(), T::zero(), T::zero()];
            for (c, e) in [(T::one(), e1), (self.c0.clone(), e2)] {
                let p = c * (e.clone() * v.ln()).exp();
                out[0] = out[0].clone() + p.clone();
                out[1] = out[1].clone() + p.clone() * e.clone() / v.clone();
                out[2] = out[2].clone() + p * e.clone() * (e - T::one()) / (v.clone() * v.clone());
            }
            return Ok(out);
        }
        let n = m.unsigned_abs();
        let (rg, a) = if m > 0 { (&self.ra, &self.beta) } else { (&self.rb, &self.alpha) };
        if rg.is_zero() {
            return Ok([T::zero(), T::zero(), T::zero()]);
        }
        let b = self.s.clone() + T::one();
        let kappa = T::pi() * T::from_i64(4 * n as i64);
        let z = kappa.clone() * v.clone();
        let g0 = psi_chf(a, &b, &z)?;
        let g1 = -(a.clone()) * kappa.clone() * psi_chf(&(a.clone() + T::one()), &(b.clone() + T::one()), &z)?;
        let g2 = a.clone() * (a.clone() + T::one()) * kappa.clone() * kappa.clone()
            * psi_chf(&(a.clone() + T::from_i64(2)), &(b + T::from_i64(2)), &z)?;
        let k = self.front.clone() * sigma_real(&self.s, n) * rg.clone();
        let p = k * (beta.clone() * v.ln() - z / T::from_i64(2)).exp();
        let w = beta.clone() / v.clone() - kappa / T::from_i64(2);
        let p1 = p.clone() * w.clone();
        let p2 = p.clone() * (w.clone() * w - beta / (v.clone() * v.clone()));
        Ok([
            p.clone() * g0.clone(),
            p1.clone() * g0.clone() + p.clone() * g1.clone(),
            p2 * g0 + p1 * g1 * T::from_i64(2) + p * g2,
        ])
    }

    /// Σ_{|m| ≤ M} mode(m, v) e(mu).
    pub fn eval(&self, tau: &Complex<T>, m_max: u64) -> Result<Estimate<T>> {
        let mut value = self.mode(0, &tau.im)?;
        let mut last = 0.0f64;
        for n in 1..=m_max as i64 {
            for m in [n, -n] {
                let c = self.mode(m, &tau.im)?;
                if n == m_max as i64 {
                    last = last.max(c.norm_sqr().to_f64().sqrt());
                }
                value = value + c * e_of(&(tau.re.clone() * T::from_i64(m)));
            }
        }
        let q = (-2.0 * std::f64::consts::PI * tau.im.to_f64()).exp();
        Ok(Estimate { value, tail: last * q / (1.0 - q), terms: 2 * m_max as usize + 1 })
    }
}

/// E_{r,s}(τ) from its Fourier expansion truncated at |m| ≤ M.
pub fn eis_fourier_eval<T: Real>(r: i64, s: &T, tau: &Complex<T>, m_max: u64) -> Result<Estimate<T>> {
    EisFourier::new(r, s)?.eval(tau, m_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::diff::Jet;
    use crate::analytic::eval::{abs_f64, eval_expansion, Point};
    use crate::catalog;
    use crate::real::BigReal;

    fn tau(u: f64, v: f64) -> Complex<f64> {
        Complex::new(u, v)
    }

    #[test]
    fn dual_evaluation_f64() {
        for (r, s, t) in [(0, 3.0, tau(0.0, 1.0)), (2, 3.0, tau(0.1, 1.2)), (-2, 3.0, tau(0.3, 0.9)), (0, 2.5, tau(-0.2, 1.1))] {
            let a = eis_coset_sum(r, &s, &t, 500).unwrap();
            let b = eis_fourier_eval(r, &s, &t, 30).unwrap();
            let d = abs_f64(&(a.value - b.value));
            assert!(d < 1e-9, "r={r} s={s}: {d}");
        }
    }

    #[test]
    fn constant_term_pole() {
        // second constant term vanishes once |r| ≥ ℓ + 2 at s₀ = ℓ + 1
        let f = EisFourier::new(4, &3.0f64).unwrap();
        let v = 1.7f64;
        let m0 = f.mode(0, &v).unwrap();
        assert!((m0.re - v.powf((3.0 + 1.0 - 4.0) / 2.0)).abs() < 1e-15);
        assert!((sigma_real(&3.0f64, 6) - sigma_real(&3.0f64, 2) * sigma_real(&3.0f64, 3)).abs() < 1e-9);
    }

    #[test]
    fn lowering_and_raising_numerically() {
        let s = 3.3f64;
        let t = tau(0.15, 1.1);
        for r in [-2i64, 0, 2] {
            let f = EisFourier::new(r, &s).unwrap();
            let jet = Jet::of(|z: &Complex<f64>| f.eval(z, 25).unwrap().value, &t);
            let down = eis_fourier_eval(r - 2, &s, &t, 25).unwrap().value * (0.5 * (s + 1.0 - r as f64));
            let up = eis_fourier_eval(r + 2, &s, &t, 25).unwrap().value * (0.5 * (s + 1.0 + r as f64));
            assert!(abs_f64(&(jet.lower() - down)) < 1e-7, "L at r={r}");
            assert!(abs_f64(&(jet.raise(r) - up)) < 1e-7, "R at r={r}");
            // Δ = -R L, so the eigenvalue is minus the product of the two factors above
            let lam = -0.25 * (s + 1.0 - r as f64) * (s + 1.0 + r as f64 - 2.0);
            let d = abs_f64(&(jet.laplacian(r) - jet.f * lam));
            assert!(d < 1e-6, "Δ at r={r}: {d} {:?} {:?}", jet.laplacian(r), jet.f * lam);
        }
    }

    #[test]
    fn mode_jet_matches_differences() {
        let f = EisFourier::new(-2, &3.3f64).unwrap();
        let v = 0.9f64;
        let h = 1e-4;
        for m in [0i64, 1, -2] {
            let j = f.mode_jet(m, &v).unwrap();
            let at = |x: f64| f.mode(m, &x).unwrap().re;
            let d1 = (at(v + h) - at(v - h)) / (2.0 * h);
            let d2 = (at(v + h) - 2.0 * at(v) + at(v - h)) / (h * h);
            assert!((j[0] - at(v)).abs() < 1e-14);
            assert!((j[1] - d1).abs() < 1e-7 * j[1].abs().max(1.0), "m={m}");
            assert!((j[2] - d2).abs() < 1e-5 * j[2].abs().max(1.0), "m={m}");
        }
    }

    #[test]
    fn harmonic_eisenstein_matches_cosets() {
        let f = catalog::harmonic_eis(2, 12).unwrap();
        let p = Point::<f64>::from_f64(0.0, 2.0).unwrap();
        let a = eval_expansion(&f, &p).unwrap().value;
        let b = eis_coset_sum(-2, &3.0f64, &tau(0.0, 2.0), 300).unwrap().value;
        assert!(abs_f64(&(a - b)) < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn dual_evaluation_big() {
        let t = Complex::new(BigReal::from_f64(0.0), BigReal::from_f64(1.0));
        let s = BigReal::from_i64(3);
        let a = eis_coset_sum(0, &s, &t, 120).unwrap();
        let b = eis_fourier_eval(0, &s, &t, 30).unwrap();
        assert!(abs_f64(&(a.value - b.value)) < 1e-8);
    }
}
