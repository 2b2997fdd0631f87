//! Poincaré series P_k(φ)(τ) = Σ_{Γ∞\SL₂(ℤ)} (φ|_kγ)(τ) for seeds of the form
//! φ(τ) = g(v) e(mu), truncated to the cosets with max(|c|,|d|) ≤ C.

use std::sync::Arc;

use num_complex::Complex;
use num_integer::Integer;

use super::diff::{default_step, e_of, taylor_coeffs};
use super::eisenstein::Estimate;
use super::eval::{cpowi, czero, j_factor, mobius};
use super::hyper::whittaker_m;
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::real::Real;

pub type Profile<T> = Arc<dyn Fn(&T) -> Result<T> + Send + Sync>;

/// A seed g(v) e(mu) of weight k with real profile g.
#[derive(Clone)]
pub struct Seed<T: Real> {
    pub weight: i64,
    pub m: i64,
    pub profile: Profile<T>,
}

impl<T: Real> Seed<T> {
    pub fn eval(&self, tau: &Complex<T>) -> Result<Complex<T>> {
        let g = (self.profile)(&tau.im)?;
        Ok(e_of(&(tau.re.clone() * T::from_i64(self.m))) * g)
    }
}

/// Representatives [a, b, c, d] of Γ∞\SL₂(ℤ) with max(|c|,|d|) ≤ C, grouped by
/// that maximum (the shell); the identity comes first.
pub fn cosets(cutoff: u64) -> Vec<([i64; 4], u64)> {
    let n = cutoff as i64;
    let mut out = vec![([1, 0, 0, 1], 1)];
    for c in 1..=n {
        for d in -n..=n {
            if c.gcd(&d) != 1 {
                continue;
            }
            // a d - b c = 1
            let e = d.extended_gcd(&c);
            let (a, b) = (e.x, -e.y);
            debug_assert_eq!(a * d - b * c, 1);
            out.push(([a, b, c, d], c.max(d.abs()) as u64));
        }
    }
    out
}

fn workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(16)
}

/// Truncated Poincaré series of `seed` at τ. The tail estimate is C times the
/// modulus of the outermost shell, a heuristic only.
pub fn poincare_sum<T: Real>(seed: &Seed<T>, tau: &Complex<T>, cutoff: u64) -> Result<Estimate<T>> {
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("τ must lie in the upper half-plane".into()));
    }
    if cutoff == 0 {
        return Err(Error::BadParameter("coset cutoff must be positive".into()));
    }
    let reps = cosets(cutoff);
    let chunk = reps.len().div_ceil(workers());
    let k = seed.weight;
    let partials: Vec<Result<(Complex<T>, Complex<T>)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = reps
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut all = czero::<T>();
                    let mut shell = czero::<T>();
                    for (g, sh) in part {
                        let term = seed.eval(&mobius(*g, tau))? * cpowi(&j_factor(*g, tau), -k);
                        if *sh == cutoff {
                            shell = shell + term.clone();
                        }
                        all = all + term;
                    }
                    Ok((all, shell))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut value = czero::<T>();
    let mut shell = czero::<T>();
    for p in partials {
        let (a, s) = p?;
        value = value + a;
        shell = shell + s;
    }
    let tail = shell.norm_sqr().to_f64().sqrt() * cutoff as f64;
    Ok(Estimate { value, tail, terms: reps.len() })
}

fn sign(m: i64) -> i64 {
    if m > 0 {
        1
    } else {
        -1
    }
}

/// φ_{k,m}(τ) = (-sgn m)^{1-k}/(1-k)! (4π|m|v)^{-k/2} M_{sgn(m)k/2,(1-k)/2}(4π|m|v) e(mu), k < 0.
pub fn f_seed<T: Real>(k: i64, m: i64) -> Result<Seed<T>> {
    if k >= 0 {
        return Err(Error::BadParameter(format!("F_(k,m) needs k < 0 for convergence, got k = {k}")));
    }
    if m == 0 {
        return Err(Error::BadParameter("F_(k,m) needs m ≠ 0".into()));
    }
    let sg = if (1 - k) % 2 == 0 { 1 } else { -sign(m) };
    let norm = T::from_i64(sg) / T::from_bigint(&factorial((1 - k) as u64));
    let kappa = T::from_i64(sign(m) * k) / T::from_i64(2);
    let mu = T::from_i64(1 - k) / T::from_i64(2);
    let scale = T::pi() * T::from_i64(4 * m.abs());
    let half_k = T::from_i64(k) / T::from_i64(2);
    let profile: Profile<T> = Arc::new(move |v: &T| {
        let y = scale.clone() * v.clone();
        let pre = (-(half_k.clone()) * y.ln()).exp();
        Ok(norm.clone() * pre * whittaker_m(&kappa, &mu, &y)?)
    });
    Ok(Seed { weight: k, m, profile })
}

/// 𝓜_{k,s}(w) = |w|^{-k/2} M_{sgn(w)k/2, s-1/2}(|w|).
pub fn script_m<T: Real>(k: i64, s: &T, w: &T) -> Result<T> {
    let aw = w.abs();
    let sg = if w.is_negative() { -1 } else { 1 };
    let kappa = T::from_i64(sg * k) / T::from_i64(2);
    let mu = s.clone() - T::from_f64(0.5);
    let pre = (-(T::from_i64(k) / T::from_i64(2)) * aw.ln()).exp();
    Ok(pre * whittaker_m(&kappa, &mu, &aw)?)
}

/// Step 2^{-P/4} for the central difference in s.
pub fn s_step<T: Real>() -> T {
    T::from_f64(0.5).powi((T::precision_bits() / 4) as i32)
}

/// ψ_{k,m}(τ) = [∂_s 𝓜_{k,s}(4πmv)]_{s=k/2} e(mu), with ∂_s a central difference.
pub fn sesqui_seed<T: Real>(k: i64, m: i64) -> Result<Seed<T>> {
    if m == 0 {
        return Err(Error::BadParameter("𝔽_(k,m) needs m ≠ 0".into()));
    }
    let h = s_step::<T>();
    let s0 = T::from_i64(k) / T::from_i64(2);
    let scale = T::pi() * T::from_i64(4 * m);
    let profile: Profile<T> = Arc::new(move |v: &T| {
        let w = scale.clone() * v.clone();
        let up = script_m(k, &(s0.clone() + h.clone()), &w)?;
        let down = script_m(k, &(s0.clone() - h.clone()), &w)?;
        Ok((up - down) / (h.clone() * T::from_i64(2)))
    });
    Ok(Seed { weight: k, m, profile })
}

/// L applied to a profile series in t = v - v₀: g e(mu) ↦ v²(2πm g + g') e(mu).
fn lower_series<T: Real>(a: &[T], v0: &T, m: i64) -> Vec<T> {
    let n = a.len() - 1;
    let two_pi_m = T::pi() * T::from_i64(2 * m);
    let inner: Vec<T> = (0..n)
        .map(|i| two_pi_m.clone() * a[i].clone() + a[i + 1].clone() * T::from_i64(i as i64 + 1))
        .collect();
    let v2 = [v0.clone() * v0.clone(), v0.clone() * T::from_i64(2), T::one()];
    (0..n)
        .map(|i| {
            let mut acc = T::zero();
            for (j, c) in v2.iter().enumerate() {
                if j <= i {
                    acc = acc + c.clone() * inner[i - j].clone();
                }
            }
            acc
        })
        .collect()
}

/// The seed L^j φ of weight k - 2j. L commutes with the slash action, so
/// P_{k-2j}(L^j φ) = L^j P_k(φ); the v-derivatives come from a 13-point stencil.
pub fn lower_seed<T: Real>(seed: &Seed<T>, j: usize) -> Seed<T> {
    if j == 0 {
        return seed.clone();
    }
    let inner = seed.profile.clone();
    let m = seed.m;
    let profile: Profile<T> = Arc::new(move |v: &T| {
        let h = default_step::<T>(6, v);
        let err = std::sync::Mutex::new(None);
        let series = taylor_coeffs(
            |x: &T| match inner(x) {
                Ok(g) => Complex::new(g, T::zero()),
                Err(e) => {
                    *err.lock().unwrap() = Some(e);
                    czero()
                }
            },
            v,
            &h,
            6,
            j,
        );
        if let Some(e) = err.into_inner().unwrap() {
            return Err(e);
        }
        let mut a: Vec<T> = series.into_iter().map(|c| c.re).collect();
        for _ in 0..j {
            a = lower_series(&a, v, m);
        }
        Ok(a[0].clone())
    });
    Seed { weight: seed.weight - 2 * j as i64, m, profile }
}

/// F_{k,m}(τ), k < 0.
pub fn poincare_eval<T: Real>(k: i64, m: i64, tau: &Complex<T>, cutoff: u64) -> Result<Estimate<T>> {
    poincare_sum(&f_seed(k, m)?, tau, cutoff)
}

/// 𝔽_{k,m}(τ) = P_k(ψ_{k,m}); needs k > 2 for absolute convergence.
pub fn sesqui_poincare_eval<T: Real>(k: i64, m: i64, tau: &Complex<T>, cutoff: u64) -> Result<Estimate<T>> {
    if k <= 2 {
        return Err(Error::BadParameter(format!("𝔽_(k,m) needs k > 2 for convergence, got k = {k}")));
    }
    poincare_sum(&sesqui_seed(k, m)?, tau, cutoff)
}

/// |L𝔽_{k,m}(τ)| and |L^k 𝔽_{k,m}(τ)|, the two vanishing flags the classifier needs in weight k > 1,
/// each summed over the lowered seed.
pub fn sesqui_lowering_norms<T: Real>(k: i64, m: i64, tau: &Complex<T>, cutoff: u64) -> Result<(Estimate<T>, Estimate<T>)> {
    if k <= 2 {
        return Err(Error::BadParameter(format!("𝔽_(k,m) needs k > 2 for convergence, got k = {k}")));
    }
    let seed = sesqui_seed::<T>(k, m)?;
    let once = poincare_sum(&lower_seed(&seed, 1), tau, cutoff)?;
    let all = poincare_sum(&lower_seed(&seed, k as usize), tau, cutoff)?;
    Ok((once, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::diff::Jet;
    use crate::analytic::eval::abs_f64;
    use num_traits::{One, Zero};
    use crate::real::BigReal;

    fn tau(u: f64, v: f64) -> Complex<f64> {
        Complex::new(u, v)
    }

    #[test]
    fn coset_representatives() {
        let reps = cosets(12);
        for (g, _) in &reps {
            assert_eq!(g[0] * g[3] - g[1] * g[2], 1);
        }
        // c = 1 contributes 2C+1 pairs, c = 2 only odd d
        assert_eq!(reps.iter().filter(|(g, _)| g[2] == 1).count(), 25);
        assert_eq!(reps.iter().filter(|(g, _)| g[2] == 2).count(), 12);
    }

    #[test]
    fn sesqui_seed_matches_series() {
        // for m > 0: ψ_{k,m} = e^{-w/2}(ln w + Σ_{n≥1} wⁿ/(n (k)_n)), w = 4πmv
        let seed = sesqui_seed::<BigReal>(4, 1).unwrap();
        for v in [0.05, 0.4, 1.3] {
            let vb = BigReal::from_f64(v);
            let w = BigReal::pi() * BigReal::from_i64(4) * vb.clone();
            let mut s = BigReal::zero();
            let mut term = BigReal::one();
            for n in 1..200i64 {
                term = term * w.clone() / BigReal::from_i64(n + 3);
                s = s + term.clone() / BigReal::from_i64(n);
            }
            let want = (-(w.clone()) / BigReal::from_i64(2)).exp() * (w.ln() + s);
            let got = (seed.profile)(&vb).unwrap();
            assert!(((got - want.clone()) / want).abs().to_f64() < 1e-25, "v = {v}");
        }
    }

    #[test]
    fn f_seed_is_harmonic() {
        let seed = f_seed::<BigReal>(-4, 1).unwrap();
        let t = Complex::new(BigReal::from_f64(0.2), BigReal::from_f64(0.8));
        let jet = Jet::of(|z: &Complex<BigReal>| seed.eval(z).unwrap(), &t);
        assert!(abs_f64(&jet.laplacian(-4)) < 1e-20 * abs_f64(&jet.f));
    }

    #[test]
    fn lowered_seed_matches_jet() {
        let seed = sesqui_seed::<f64>(4, 1).unwrap();
        let low = lower_seed(&seed, 1);
        let t = tau(0.3, 0.7);
        let jet = Jet::of(|z: &Complex<f64>| seed.eval(z).unwrap(), &t);
        let d = abs_f64(&(jet.lower() - low.eval(&t).unwrap()));
        assert!(d < 1e-7 * abs_f64(&jet.lower()), "{d}");
    }

    #[test]
    fn xi_of_sesqui_seed_is_proportional() {
        // ξ₄ψ_{4,1} = c φ_{-2,-1} with c = 6/(4π)³
        let seed = sesqui_seed::<f64>(4, 1).unwrap();
        let target = f_seed::<f64>(-2, -1).unwrap();
        let c = 6.0 / (4.0 * std::f64::consts::PI).powi(3);
        for t in [tau(0.1, 0.6), tau(-0.4, 1.2)] {
            let jet = Jet::of(|z: &Complex<f64>| seed.eval(z).unwrap(), &t);
            let phi = target.eval(&t).unwrap();
            assert!(abs_f64(&(jet.xi(4) - phi * c)) < 1e-6 * abs_f64(&jet.xi(4)), "{:?} {:?}", jet.xi(4), phi * c);
        }
    }

    #[test]
    fn f_minus4_equivariance_and_laplacian() {
        let t = tau(1.0 / 3.0, 1.0);
        // S maps the coset box to itself, so test with a matrix that does not
        let gt = mobius([2, 1, 1, 1], &t);
        let a = poincare_eval(-4, 1, &gt, 200).unwrap();
        let b = poincare_eval(-4, 1, &t, 200).unwrap();
        let res = abs_f64(&(a.value - b.value * cpowi(&(t + 1.0), -4)));
        assert!(res < 1e-6, "residual {res}, |F| = {}", abs_f64(&a.value));

        let seed = f_seed::<f64>(-4, 1).unwrap();
        let t0 = tau(0.1, 1.1);
        let jet = Jet::of(|z: &Complex<f64>| poincare_sum(&seed, z, 30).unwrap().value, &t0);
        assert!(abs_f64(&jet.laplacian(-4)) < 1e-6 * abs_f64(&jet.f));
    }

    #[test]
    fn xi_of_sesqui_series_over_f_is_constant() {
        // finite-difference ξ₄ of the truncated sum, divided by F_{-2,-1}
        let seed = sesqui_seed::<f64>(4, 1).unwrap();
        let c = 6.0 / (4.0 * std::f64::consts::PI).powi(3);
        for t in [tau(0.1, 0.9), tau(-0.3, 1.4), tau(0.45, 0.7)] {
            let jet = Jet::of(|z: &Complex<f64>| poincare_sum(&seed, z, 40).unwrap().value, &t);
            let f = poincare_eval(-2, -1, &t, 40).unwrap().value;
            let ratio = jet.xi(4) / f;
            assert!((ratio - c).norm() < 1e-4 * c, "{ratio}");
        }
    }

    #[test]
    fn sesqui_lowering_flags_nonzero() {
        let (once, all) = sesqui_lowering_norms(4, 1, &tau(0.1, 1.1), 40).unwrap();
        assert!(abs_f64(&once.value) > 1e-3 && abs_f64(&all.value) > 1e-3);
    }
}
