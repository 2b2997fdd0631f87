//! Exact constructors for the scalar example forms.

pub mod qseries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{
    bernoulli, chi_neg, class_number, factorial, factorize, is_prime, rho, sigma, zeta_even_over_pi,
};
use crate::coeffring::{ExactCoeff, Symbol};
use crate::error::{Error, Result};
use crate::mfexp::{q, Expansion, TermKey};

pub use crate::ExactExpansion;

fn check_trunc(m: i64) -> Result<usize> {
    if m < 1 {
        return Err(Error::BadParameter(format!("truncation must be ≥ 1, got {m}")));
    }
    Ok(m as usize)
}

/// Π(1 - qⁿ)^24 up to q^m.
fn eta24_core(m: usize) -> Vec<BigInt> {
    qseries::pow(&qseries::euler_product(m), 24, m)
}

/// Δ = q Π(1 - qⁿ)^24.
pub fn delta(m: i64) -> Result<ExactExpansion> {
    let mu = check_trunc(m)?;
    let core = eta24_core(mu - 1);
    Ok(Expansion::from_q_series(12, m, 1, &core))
}

/// 1/Δ = q^{-1} Π(1 - qⁿ)^{-24}.
pub fn inv_delta(m: i64) -> Result<ExactExpansion> {
    let mu = check_trunc(m)?;
    let inv = qseries::inverse(&eta24_core(mu + 1), mu + 1);
    Ok(Expansion::from_q_series(-12, m, -1, &inv))
}

/// Integer coefficients of E_k up to q^m (E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) qⁿ).
pub fn eis_hol_coeffs(k: u32, m: usize) -> Vec<BigInt> {
    let factor = -BigRational::from_integer(BigInt::from(2 * k)) / bernoulli(k as usize);
    assert!(factor.is_integer(), "E_k has integral coefficients for k ≥ 4 even");
    let f = factor.to_integer();
    let mut out = vec![BigInt::one()];
    for n in 1..=m {
        out.push(&f * sigma(n as u64, k - 1));
    }
    out
}

/// Holomorphic Eisenstein series E_k, k ≥ 4 even.
pub fn eis_hol(k: i64, m: i64) -> Result<ExactExpansion> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::BadParameter(format!("eis_hol needs even k ≥ 4, got {k}")));
    }
    let mu = check_trunc(m)?;
    Ok(Expansion::from_q_series(k, m, 0, &eis_hol_coeffs(k as u32, mu)))
}

/// j = E₄³/Δ.
pub fn j_invariant(m: i64) -> Result<ExactExpansion> {
    let mu = check_trunc(m)?;
    let e4 = eis_hol_coeffs(4, mu + 1);
    let e4cubed = qseries::pow(&e4, 3, mu + 1);
    let inv = qseries::inverse(&eta24_core(mu + 1), mu + 1);
    let series = qseries::mul(&e4cubed, &inv, mu + 1);
    Ok(Expansion::from_q_series(0, m, -1, &series))
}

/// E₂* = 1 - 24 Σ σ₁(n) qⁿ - 3/(πv).
pub fn e2star(m: i64) -> Result<ExactExpansion> {
    let mu = check_trunc(m)?;
    let mut coeffs = vec![BigInt::one()];
    for n in 1..=mu {
        coeffs.push(BigInt::from(-24) * sigma(n as u64, 1));
    }
    let mut e = Expansion::from_q_series(2, m, 0, &coeffs);
    e.push(TermKey::v(-1), ExactCoeff::pi_pow(-1) * ExactCoeff::from_int(-3));
    Ok(e)
}

/// σ_{-s}(n) = σ_s(n) / n^s.
fn sigma_neg(n: u64, s: u32) -> BigRational {
    BigRational::new(sigma(n, s), BigInt::from(n).pow(s))
}

/// The weight -ℓ harmonic Eisenstein series E_{-ℓ, 1+ℓ} for even ℓ ≥ 2.
pub fn harmonic_eis(l: i64, m: i64) -> Result<ExactExpansion> {
    if l < 2 || l % 2 != 0 {
        return Err(Error::BadParameter(format!("harmonic_eis needs even ℓ ≥ 2, got {l}")));
    }
    let mu = check_trunc(m)?;
    let lu = l as u32;
    // K = 2π 2^{-ℓ-1} i^ℓ = (-1)^{ℓ/2} 2^{-ℓ} π
    let sign = if (l / 2) % 2 == 0 { 1 } else { -1 };
    let k_over_zeta = ExactCoeff::from_rational(
        BigRational::new(BigInt::from(sign), BigInt::one() << (l as usize))
            / zeta_even_over_pi(lu + 2),
    ) * ExactCoeff::pi_pow(-(l as i32) - 1);

    let mut e = Expansion::new(-l, Some(q(m)));
    e.push(TermKey::v(l + 1), ExactCoeff::one());
    e.push(TermKey::one(), k_over_zeta.clone() * ExactCoeff::zeta(lu + 1));
    let inv_fact = BigRational::new(BigInt::one(), factorial(l as u64));
    for n in 1..=mu as u64 {
        let s = sigma_neg(n, lu + 1);
        let c = k_over_zeta.scale_rational(&s);
        e.push(TermKey::q(q(n as i64)), c.clone());
        e.push(
            TermKey::q(q(-(n as i64))).with_gamma(1 + l, q(n as i64)),
            c.scale_rational(&inv_fact),
        );
    }
    Ok(e)
}

fn check_discriminant(d: i64) -> Result<u64> {
    if d <= 3 || d % 4 != 3 || !is_prime(d as u64) {
        return Err(Error::BadParameter(format!(
            "D must be a prime ≡ 3 mod 4 greater than 3, got {d}"
        )));
    }
    Ok(d as u64)
}

/// ρ(n), the number of integral ideals of norm n in Q(√-D).
pub fn ideal_count(d: i64, n: u64) -> Result<i64> {
    let d = check_discriminant(d)?;
    Ok(rho(d, n))
}

pub fn class_number_of(d: i64) -> Result<u64> {
    Ok(class_number(check_discriminant(d)?))
}

/// ½Ê⁺₀ = h + 2 Σ ρ(n) qⁿ.
pub fn coherent(d: i64, m: i64) -> Result<ExactExpansion> {
    let du = check_discriminant(d)?;
    let mu = check_trunc(m)?;
    let mut coeffs = vec![BigInt::from(class_number(du))];
    for n in 1..=mu as u64 {
        coeffs.push(BigInt::from(2 * rho(du, n)));
    }
    Ok(Expansion::from_q_series(1, m, 0, &coeffs).with_level(du))
}

fn ord(p: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Holomorphic coefficient a(n), n > 0, of the incoherent series φ.
pub fn incoherent_coeff(d: u64, n: u64) -> ExactCoeff {
    let mut c = ExactCoeff::log_int(d)
        * ExactCoeff::from_int(-2 * (ord(d, n) as i64 + 1) * rho(d, n));
    for (p, e) in factorize(n) {
        if p == d {
            continue;
        }
        let r = rho(d, n / p);
        if r != 0 {
            c = c + ExactCoeff::log_int(p) * ExactCoeff::from_int(-2 * (e as i64 + 1) * r);
        }
    }
    c
}

/// φ = ½ ∂_s Ê⁻_s |_{s=0}, weight 1.
pub fn incoherent(d: i64, m: i64) -> Result<ExactExpansion> {
    let du = check_discriminant(d)?;
    let mu = check_trunc(m)?;
    let h = class_number(du) as i64;
    let mut e = Expansion::new(1, Some(q(m))).with_level(du);
    let constant = ExactCoeff::log_int(du) * ExactCoeff::from_int(h)
        + ExactCoeff::symbol(Symbol::LambdaRatio(du).register()) * ExactCoeff::ratio(h, 2);
    e.push(TermKey::one(), constant);
    e.push(TermKey::one().with_log_pow(1), ExactCoeff::from_int(h));
    for n in 1..=mu as u64 {
        e.push(TermKey::q(q(n as i64)), incoherent_coeff(du, n));
        let r = rho(du, n);
        if r != 0 {
            e.push(
                TermKey::q(q(-(n as i64))).with_gamma(0, q(n as i64)),
                ExactCoeff::from_int(-2 * r),
            );
        }
    }
    Ok(e)
}

/// φ = -(1/6) log(|Δ|² v¹²) = (2π/3) v + 4 Σ σ_{-1}(n)(qⁿ + q̄ⁿ) - 2 log v.
pub fn kronecker_phi(m: i64) -> Result<ExactExpansion> {
    let mu = check_trunc(m)?;
    let mut e = Expansion::new(0, Some(q(m)));
    e.push(TermKey::v(1), ExactCoeff::pi_pow(1) * ExactCoeff::ratio(2, 3));
    e.push(TermKey::one().with_log_pow(1), ExactCoeff::from_int(-2));
    for n in 1..=mu as u64 {
        let c = ExactCoeff::from_rational(sigma_neg(n, 1) * BigRational::from_integer(4.into()));
        e.push(TermKey::q(q(n as i64)), c.clone());
        e.push(TermKey::qbar(q(n as i64)), c);
    }
    Ok(e)
}

/// η(τ)η(23τ), a weight-one cusp form of level 23.
pub fn eta_product_23(m: i64) -> Result<ExactExpansion> {
    let mu = check_trunc(m)?;
    let a = qseries::euler_product(mu);
    let b = qseries::euler_product_scaled(23, mu);
    let prod = qseries::mul(&a, &b, mu - 1);
    Ok(Expansion::from_q_series(1, m, 1, &prod).with_level(23))
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "delta",
    "inv_delta",
    "j",
    "eis_hol",
    "e2star",
    "harmonic_eis",
    "coherent",
    "incoherent",
    "kronecker_phi",
    "eta_product_23",
];

fn param(params: &[i64], i: usize, name: &str) -> Result<i64> {
    params
        .get(i)
        .copied()
        .ok_or_else(|| Error::BadParameter(format!("{name} needs parameter #{}", i + 1)))
}

/// Scalar catalog lookup by name.
pub fn by_name(name: &str, params: &[i64], m: i64) -> Result<ExactExpansion> {
    match name {
        "delta" => delta(m),
        "inv_delta" => inv_delta(m),
        "j" => j_invariant(m),
        "eis_hol" => eis_hol(param(params, 0, name)?, m),
        "e2star" => e2star(m),
        "harmonic_eis" => harmonic_eis(param(params, 0, name)?, m),
        "coherent" => coherent(param(params, 0, name)?, m),
        "incoherent" => incoherent(param(params, 0, name)?, m),
        "kronecker_phi" => kronecker_phi(m),
        "eta_product_23" => eta_product_23(m),
        other => Err(Error::UnknownForm(other.to_string())),
    }
}

/// χ_{-D}, exposed for diagnostics.
pub fn character(d: u64, n: u64) -> i32 {
    chi_neg(d, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maassops::{laplacian, lower, xi};
    use crate::mfexp::{decompose, Space};

    fn qc(e: &ExactExpansion, n: i64) -> ExactCoeff {
        e.q_coeff(n)
    }

    fn int(n: i64) -> ExactCoeff {
        ExactCoeff::from_int(n)
    }

    #[test]
    fn delta_coefficients() {
        let d = delta(6).unwrap();
        let expect = [1, -24, 252, -1472, 4830, -6048];
        for (i, c) in expect.iter().enumerate() {
            assert_eq!(qc(&d, i as i64 + 1), int(*c));
        }
    }

    #[test]
    fn delta_from_eisenstein_series() {
        // 1728 Δ = E₄³ - E₆²
        let m = 20;
        let e4 = eis_hol_coeffs(4, m);
        let e6 = eis_hol_coeffs(6, m);
        let lhs = qseries::pow(&e4, 3, m);
        let rhs = qseries::mul(&e6, &e6, m);
        let d = delta(m as i64).unwrap();
        for n in 1..=m {
            let diff = &lhs[n] - &rhs[n];
            assert_eq!(ExactCoeff::from_bigint(diff), qc(&d, n as i64) * int(1728));
        }
    }

    #[test]
    fn inverse_delta_and_j() {
        let f = inv_delta(5).unwrap();
        assert_eq!(qc(&f, -1), int(1));
        assert_eq!(qc(&f, 0), int(24));
        assert_eq!(qc(&f, 1), int(324));
        let j = j_invariant(3).unwrap();
        assert_eq!(qc(&j, -1), int(1));
        assert_eq!(qc(&j, 0), int(744));
        assert_eq!(qc(&j, 1), int(196884));
        assert_eq!(qc(&j, 2), int(21493760));
    }

    #[test]
    fn inverse_delta_times_delta_is_one() {
        let m = 15;
        let a = delta(m).unwrap();
        let b = inv_delta(m).unwrap();
        for n in 0..=10 {
            let mut s = ExactCoeff::zero();
            for i in 1..=n + 1 {
                s = s + qc(&a, i) * qc(&b, n - i);
            }
            assert_eq!(s, if n == 0 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn e2star_shape() {
        let e = e2star(5).unwrap();
        assert_eq!(qc(&e, 0), int(1));
        assert_eq!(qc(&e, 1), int(-24));
        assert_eq!(e.coeff(&TermKey::v(-1)), Some(&(ExactCoeff::pi_pow(-1) * int(-3))));
        let l = lower(&e);
        assert_eq!(l, Expansion::constant(0, ExactCoeff::pi_pow(-1) * int(3)).truncate(q(5)));
    }

    #[test]
    fn harmonic_eisenstein_weight_minus_two() {
        let f = harmonic_eis(2, 8).unwrap();
        let expect = ExactCoeff::pi_pow(-3) * ExactCoeff::zeta(3) * ExactCoeff::ratio(-45, 2);
        assert_eq!(qc(&f, 0), expect);
        assert_eq!(f.coeff(&TermKey::v(3)), Some(&int(1)));
        assert!(laplacian(&f).is_empty());
        // ξ_{-2} f = 3 E₄
        let x = xi(&f);
        let e4 = eis_hol(4, 8).unwrap().scale(&int(3));
        assert_eq!(x, e4);
        assert_eq!(decompose(&f).space, Space::Mg);
    }

    #[test]
    fn weight_one_pair() {
        let c = coherent(7, 6).unwrap();
        let expect = [1, 2, 4, 0, 6, 0, 0];
        for (n, v) in expect.iter().enumerate() {
            assert_eq!(qc(&c, n as i64), int(*v));
        }
        let f = incoherent(7, 30).unwrap();
        assert_eq!(
            f.coeff(&TermKey::q(q(-1)).with_gamma(0, q(1))),
            Some(&int(-2))
        );
        assert_eq!(xi(&f), coherent(7, 30).unwrap());
        assert!(laplacian(&f).is_empty());
        assert_eq!(decompose(&f).space, Space::Mg);
    }

    #[test]
    fn kronecker_function_terms() {
        let f = kronecker_phi(4).unwrap();
        assert_eq!(f.coeff(&TermKey::v(1)), Some(&(ExactCoeff::pi_pow(1) * ExactCoeff::ratio(2, 3))));
        assert_eq!(f.coeff(&TermKey::one().with_log_pow(1)), Some(&int(-2)));
        assert_eq!(qc(&f, 1), int(4));
        assert_eq!(f.coeff(&TermKey::qbar(q(1))), Some(&int(4)));
        let d = laplacian(&f);
        assert!(!d.is_empty());
        assert!(laplacian(&d).is_empty());
    }

    #[test]
    fn harmonic_catalog_forms_are_annihilated() {
        for f in [inv_delta(10), j_invariant(10), delta(10), e2star(10), eta_product_23(10)] {
            assert!(laplacian(&f.unwrap()).is_empty());
        }
    }

    #[test]
    fn eta_product_starts_at_q() {
        let f = eta_product_23(30).unwrap();
        assert_eq!(qc(&f, 1), int(1));
        assert_eq!(qc(&f, 2), int(-1));
        assert_eq!(f.level(), 23);
    }
}
