//! Harmonic-shape data `f = f⁺ + f⁻` and the round trip between coefficient
//! data and expansions.
//!
//! Conventions: `f⁺ = Σ c⁺(n) qⁿ`; the constant nonholomorphic term is
//! `c⁻(0) v^{1-k}` (or `-c⁻(0) log v` for k = 1); the other nonholomorphic
//! terms are `c⁻(n) W_k(2πnv) qⁿ`, i.e. `c⁻(n) Γ(1-k, 4π|n|v) qⁿ` for n < 0
//! and, for k ≤ 0, the elementary `c⁻(n) Γ(1-k, -4πnv) qⁿ` for n > 0.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{q, Expansion, GammaAtom, TermKey, Q};
use crate::arith::factorial;
use crate::coeffring::{ExactCoeff, Scalar, DEFAULT_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicData<C: Scalar> {
    pub weight: i64,
    pub trunc: Option<Q>,
    pub plus: BTreeMap<Q, C>,
    pub minus: BTreeMap<Q, C>,
}

impl<C: Scalar> HarmonicData<C> {
    pub fn new(weight: i64, trunc: Option<Q>) -> Self {
        HarmonicData { weight, trunc, plus: BTreeMap::new(), minus: BTreeMap::new() }
    }

    /// Principal part: the holomorphic coefficients with n < 0.
    pub fn principal_part(&self) -> BTreeMap<Q, C> {
        self.plus
            .iter()
            .filter(|(n, _)| **n < Q::zero())
            .map(|(n, c)| (*n, c.clone()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// In both H_k and H_k^♯.
    Both,
    H,
    Sharp,
    Mg,
    NotHarmonicShape,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::Both => "H_k and H_k^sharp",
            Space::H => "H_k",
            Space::Sharp => "H_k^sharp",
            Space::Mg => "H_k^mg",
            Space::NotHarmonicShape => "not-harmonic-shape",
        }
    }

    pub fn in_h(&self) -> bool {
        matches!(self, Space::Both | Space::H)
    }

    pub fn in_sharp(&self) -> bool {
        matches!(self, Space::Both | Space::Sharp)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition<C: Scalar> {
    pub data: HarmonicData<C>,
    pub space: Space,
}

impl<C: Scalar> Decomposition<C> {
    pub fn principal_part(&self) -> BTreeMap<Q, C> {
        self.data.principal_part()
    }
}

fn fact(n: i64) -> ExactCoeff {
    ExactCoeff::from_bigint(factorial(n as u64))
}

/// The elementary expansion of `Γ(1-k, -4πnv) qⁿ` for k ≤ 0, n > 0.
fn growing_terms(k: i64, n: Q) -> Vec<(TermKey, ExactCoeff)> {
    let mk = -k;
    let base = TermKey { u_freq: n, v_decay: -n, ..TermKey::one() };
    let fk = fact(mk);
    (0..=mk)
        .map(|j| {
            // (-k)! (-4πn v)^j / j!
            let b = num_rational::BigRational::new((-4 * *n.numer()).into(), (*n.denom()).into());
            let c = fk.clone() * ExactCoeff::from_rational(num_traits::pow(b, j as usize))
                * ExactCoeff::pi_pow(j as i32)
                * ExactCoeff::from_rational(num_rational::BigRational::new(
                    1.into(),
                    factorial(j as u64),
                ));
            (base.with_v_pow(j), c)
        })
        .collect()
}

/// Expansion with the given coefficient data.
pub fn build<C: Scalar>(data: &HarmonicData<C>) -> Result<Expansion<C>> {
    let k = data.weight;
    let mut e = Expansion::new(k, data.trunc);
    for (n, c) in &data.plus {
        e.push(TermKey::q(*n), c.clone());
    }
    for (n, c) in &data.minus {
        if n.is_zero() {
            if k == 1 {
                e.push(TermKey::one().with_log_pow(1), -c.clone());
            } else {
                e.push(TermKey::v(1 - k), c.clone());
            }
        } else if *n < Q::zero() {
            e.push(TermKey::q(*n).with_gamma(1 - k, n.abs()), c.clone());
        } else if k <= 0 {
            for (key, f) in growing_terms(k, *n) {
                e.push(key, c.clone() * C::from_exact(&f));
            }
        } else {
            return Err(Error::UnsupportedTerm(format!(
                "W_k(2πnv)qⁿ with n > 0 is not elementary for weight {k}"
            )));
        }
    }
    Ok(e)
}

/// Splits an expansion into holomorphic and nonholomorphic coefficient data
/// and reports its space membership.
pub fn decompose<C: Scalar>(e: &Expansion<C>) -> Decomposition<C> {
    let k = e.weight();
    let mut data = HarmonicData::new(k, e.trunc());
    let not_shape = |data: HarmonicData<C>| Decomposition { data, space: Space::NotHarmonicShape };

    if e.terms().any(|(key, _)| key.u_pow > 0) {
        return not_shape(HarmonicData::new(k, e.trunc()));
    }

    let freqs: std::collections::BTreeSet<Q> = e.terms().map(|(key, _)| key.u_freq).collect();
    for n in freqs {
        let hol = e.coeff_or_zero(&TermKey::q(n));
        if !hol.is_zero() {
            data.plus.insert(n, hol);
        }
        let minus = if n.is_zero() {
            if k == 1 {
                -e.coeff_or_zero(&TermKey::one().with_log_pow(1))
            } else {
                e.coeff_or_zero(&TermKey::v(1 - k))
            }
        } else if k <= 0 {
            let key = TermKey { u_freq: n, v_decay: -n, ..TermKey::one() };
            let inv = ExactCoeff::from_rational(num_rational::BigRational::new(
                1.into(),
                factorial((-k) as u64),
            ));
            e.coeff_or_zero(&key) * C::from_exact(&inv)
        } else if n < Q::zero() {
            let key = TermKey {
                gamma: Some(GammaAtom { s: 0, lambda: n.abs() }),
                ..TermKey::q(n)
            };
            // Γ(1-k,x) = (-1)^{k-1}/(k-1)! Γ(0,x) + elementary
            let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
            e.coeff_or_zero(&key) * C::from_exact(&(fact(k - 1) * ExactCoeff::from_int(sign)))
        } else {
            C::zero()
        };
        if !minus.is_zero() {
            data.minus.insert(n, minus);
        }
    }

    let rebuilt = match build(&data) {
        Ok(r) => r,
        Err(_) => return not_shape(data),
    };
    let diff = match rebuilt.sub(e) {
        Ok(d) => d,
        Err(_) => return not_shape(data),
    };
    let scale = e.scale_hint().max(1.0);
    if !diff.zero_test(scale, DEFAULT_TOL.max(1e-20)).zero {
        return not_shape(data);
    }

    // H_k: c⁻(n) = 0 for n ≥ 0. H_k^♯: c⁺(n) = 0 for n < 0 and D^{1-k} f cuspidal,
    // which also forces c⁻(0) = 0.
    let in_h = !data.minus.keys().any(|n| *n >= Q::zero());
    let in_sharp = !data.plus.keys().any(|n| *n < Q::zero()) && !data.minus.contains_key(&Q::zero());
    let space = match (in_h, in_sharp) {
        (true, true) => Space::Both,
        (true, false) => Space::H,
        (false, true) => Space::Sharp,
        (false, false) => Space::Mg,
    };
    Decomposition { data, space }
}

/// Convenience: holomorphic coefficient list c⁺(n) for integer n in a range.
pub fn plus_coeffs<C: Scalar>(d: &HarmonicData<C>, from: i64, to: i64) -> Vec<C> {
    (from..=to)
        .map(|n| d.plus.get(&q(n)).cloned().unwrap_or_else(C::zero))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = HarmonicData<ExactCoeff>;

    #[test]
    fn constant_is_in_both_spaces() {
        let e = Expansion::constant(0, ExactCoeff::one());
        assert_eq!(decompose(&e).space, Space::Both);
    }

    #[test]
    fn round_trip_weight_minus_two() {
        let mut d = D::new(-2, Some(q(3)));
        d.plus.insert(q(-1), ExactCoeff::from_int(1));
        d.plus.insert(q(2), ExactCoeff::from_int(5));
        d.minus.insert(q(0), ExactCoeff::pi_pow(-1));
        d.minus.insert(q(-2), ExactCoeff::from_int(7));
        d.minus.insert(q(1), ExactCoeff::from_int(-3));
        let e = build(&d).unwrap();
        let back = decompose(&e);
        assert_eq!(back.data, d);
        assert_eq!(back.space, Space::Mg);
    }

    #[test]
    fn round_trip_weight_three() {
        let mut d = D::new(3, Some(q(4)));
        d.plus.insert(q(1), ExactCoeff::from_int(2));
        d.minus.insert(q(-3), ExactCoeff::from_int(1));
        let e = build(&d).unwrap();
        let back = decompose(&e);
        assert_eq!(back.data, d);
        assert_eq!(back.space, Space::Both);
    }

    #[test]
    fn u_powers_are_not_harmonic_shape() {
        let e = Expansion::from_terms(0, None, [(TermKey::one().with_u_pow(1), ExactCoeff::one())]);
        assert_eq!(decompose(&e).space, Space::NotHarmonicShape);
        let e = Expansion::from_terms(0, None, [(TermKey::v(3), ExactCoeff::one())]);
        assert_eq!(decompose(&e).space, Space::NotHarmonicShape);
    }
}
