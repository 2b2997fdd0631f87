//! Term algebra for Maass–Fourier expansions.
//!
//! A term is `c · u^p · e(nu) · v^a · (log v)^m · e^{-2πwv} · Γ(s, 4πλv)`.
//! The holomorphic `q^n` is `(p, n, a, m, w) = (0, n, 0, 0, n)` and the
//! antiholomorphic `q̄^ℓ` has `n = -ℓ, w = ℓ`.
//!
//! Incomplete-gamma atoms are kept in a unique normal form: integer `s > 0`
//! expands to elementary terms and `s < 0` is reduced to `Γ(0, ·)` by
//! `Γ(s+1,x) = sΓ(s,x) + x^s e^{-x}`, so only `s = 0` atoms are ever stored.

pub mod decompose;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::arith::factorial;
use crate::coeffring::{ExactCoeff, Scalar, ZeroTest, Certainty};
use crate::error::{Error, Result};

pub use decompose::{build, decompose, Decomposition, HarmonicData, Space};

/// Rational number used for frequencies, decay rates and atom scales.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// `Γ(s, 4πλv)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaAtom {
    pub s: i64,
    pub lambda: Q,
}

/// Canonical key of a term. Field order defines the stable term ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub u_freq: Q,
    pub v_decay: Q,
    pub u_pow: u32,
    pub v_pow: i64,
    pub log_pow: u32,
    pub gamma: Option<GammaAtom>,
}

impl TermKey {
    pub fn one() -> Self {
        TermKey {
            u_freq: Q::zero(),
            v_decay: Q::zero(),
            u_pow: 0,
            v_pow: 0,
            log_pow: 0,
            gamma: None,
        }
    }

    /// `q^n`.
    pub fn q(n: Q) -> Self {
        TermKey { u_freq: n, v_decay: n, ..Self::one() }
    }

    /// `q̄^ℓ`.
    pub fn qbar(l: Q) -> Self {
        TermKey { u_freq: -l, v_decay: l, ..Self::one() }
    }

    pub fn v(a: i64) -> Self {
        TermKey { v_pow: a, ..Self::one() }
    }

    pub fn with_v_pow(mut self, a: i64) -> Self {
        self.v_pow = a;
        self
    }

    pub fn with_u_pow(mut self, p: u32) -> Self {
        self.u_pow = p;
        self
    }

    pub fn with_log_pow(mut self, m: u32) -> Self {
        self.log_pow = m;
        self
    }

    pub fn with_gamma(mut self, s: i64, lambda: Q) -> Self {
        self.gamma = Some(GammaAtom { s, lambda });
        self
    }

    pub fn is_holomorphic_q(&self) -> bool {
        self.u_pow == 0
            && self.v_pow == 0
            && self.log_pow == 0
            && self.gamma.is_none()
            && self.v_decay == self.u_freq
    }

    /// Product of two keys, if at most one carries an atom.
    pub fn mul(&self, other: &TermKey) -> Option<TermKey> {
        if self.gamma.is_some() && other.gamma.is_some() {
            return None;
        }
        Some(TermKey {
            u_freq: self.u_freq + other.u_freq,
            v_decay: self.v_decay + other.v_decay,
            u_pow: self.u_pow + other.u_pow,
            v_pow: self.v_pow + other.v_pow,
            log_pow: self.log_pow + other.log_pow,
            gamma: self.gamma.or(other.gamma),
        })
    }
}

fn q_to_exact(r: &Q) -> ExactCoeff {
    ExactCoeff::ratio(*r.numer(), *r.denom())
}

/// `(4πλ)^j` exactly.
fn four_pi_lambda_pow(lambda: Q, j: i64) -> ExactCoeff {
    use num_rational::BigRational;
    let base = BigRational::new((4 * *lambda.numer()).into(), (*lambda.denom()).into());
    let r = if j >= 0 {
        num_traits::pow(base, j as usize)
    } else {
        num_traits::pow(base.recip(), (-j) as usize)
    };
    ExactCoeff::from_rational(r) * ExactCoeff::pi_pow(j as i32)
}

/// Normal form of `Γ(s, 4πλv)` as a list of `(coefficient, v power, decay, keep atom)`.
/// Terms with `keep atom` carry `Γ(0, 4πλv)` and no extra decay.
fn expand_atom(s: i64, lambda: Q) -> Vec<(ExactCoeff, i64, Q, bool)> {
    let two_l = Q::from_integer(2) * lambda;
    if s > 0 {
        // (s-1)! e^{-x} Σ_{j<s} x^j / j!
        let fs = factorial((s - 1) as u64);
        (0..s)
            .map(|j| {
                let c = ExactCoeff::from_rational(num_rational::BigRational::new(
                    fs.clone(),
                    factorial(j as u64),
                )) * four_pi_lambda_pow(lambda, j);
                (c, j, two_l, false)
            })
            .collect()
    } else if s == 0 {
        vec![(ExactCoeff::one(), 0, Q::zero(), true)]
    } else {
        // Γ(s,x) = (Γ(s+1,x) - x^s e^{-x}) / s
        let inv_s = ExactCoeff::ratio(1, s);
        let mut out: Vec<_> = expand_atom(s + 1, lambda)
            .into_iter()
            .map(|(c, a, w, keep)| (c * inv_s.clone(), a, w, keep))
            .collect();
        out.push((-(inv_s * four_pi_lambda_pow(lambda, s)), s, two_l, false));
        out
    }
}

/// A weight-tagged, truncated, canonical Maass–Fourier expansion.
///
/// `trunc = None` marks an expansion with finite support that is exact as
/// stored (polynomials in u, v and finitely many exponentials).
#[derive(Clone, PartialEq)]
pub struct Expansion<C: Scalar> {
    weight: i64,
    level: u64,
    trunc: Option<Q>,
    terms: BTreeMap<TermKey, C>,
}

impl<C: Scalar> Expansion<C> {
    pub fn new(weight: i64, trunc: Option<Q>) -> Self {
        Expansion { weight, level: 1, trunc, terms: BTreeMap::new() }
    }

    pub fn with_level(mut self, level: u64) -> Self {
        self.level = self.level.lcm(&level.max(1));
        self
    }

    pub fn from_terms(
        weight: i64,
        trunc: Option<Q>,
        terms: impl IntoIterator<Item = (TermKey, C)>,
    ) -> Self {
        let mut e = Self::new(weight, trunc);
        for (k, c) in terms {
            e.push(k, c);
        }
        e
    }

    pub fn constant(weight: i64, c: C) -> Self {
        Self::from_terms(weight, None, [(TermKey::one(), c)])
    }

    pub fn zero(weight: i64, trunc: Option<Q>) -> Self {
        Self::new(weight, trunc)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn trunc(&self) -> Option<Q> {
        self.trunc
    }

    pub fn is_finite(&self) -> bool {
        self.trunc.is_none()
    }

    /// Same terms with a different weight tag.
    pub fn retag(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &TermKey) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn coeff_or_zero(&self, key: &TermKey) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    /// Largest |u_freq| among stored terms.
    pub fn max_abs_freq(&self) -> Q {
        self.terms
            .keys()
            .map(|k| k.u_freq.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }

    fn within_trunc(&self, key: &TermKey) -> bool {
        match self.trunc {
            Some(m) => key.u_freq.abs() <= m,
            None => true,
        }
    }

    fn insert_raw(&mut self, key: TermKey, c: C) {
        if c.is_zero() || !self.within_trunc(&key) {
            return;
        }
        let d = *key.u_freq.denom() as u64;
        if self.level % d != 0 {
            self.level = self.level.lcm(&d);
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Adds a term, merging keys and normalizing incomplete-gamma atoms.
    pub fn push(&mut self, key: TermKey, c: C) {
        match key.gamma {
            Some(GammaAtom { s, lambda }) if s != 0 => {
                for (ac, da, dw, keep) in expand_atom(s, lambda) {
                    let k = TermKey {
                        v_pow: key.v_pow + da,
                        v_decay: key.v_decay + dw,
                        gamma: if keep { Some(GammaAtom { s: 0, lambda }) } else { None },
                        ..key
                    };
                    self.insert_raw(k, c.clone() * C::from_exact(&ac));
                }
            }
            _ => self.insert_raw(key, c),
        }
    }

    /// Recomputes the canonical form (idempotent).
    pub fn canonicalize(&self) -> Self {
        let mut out = Expansion { terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            out.push(*k, c.clone());
        }
        out
    }

    pub fn truncate(&self, m: Q) -> Self {
        let trunc = Some(match self.trunc {
            Some(t) => t.min(m),
            None => m,
        });
        let mut out = Expansion { trunc, terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            out.insert_raw(*k, c.clone());
        }
        out
    }

    fn min_trunc(a: Option<Q>, b: Option<Q>) -> Option<Q> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(
                self.weight.to_string(),
                other.weight.to_string(),
            ));
        }
        let trunc = Self::min_trunc(self.trunc, other.trunc);
        let mut out = Expansion {
            weight: self.weight,
            level: self.level.lcm(&other.level),
            trunc,
            terms: BTreeMap::new(),
        };
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert_raw(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Expansion { terms: BTreeMap::new(), ..self.clone() };
        }
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Expansion { terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            out.insert_raw(*k, f(c));
        }
        out
    }

    /// Coefficients converted to another scalar type.
    pub fn convert<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Expansion<D> {
        let mut out = Expansion::<D> {
            weight: self.weight,
            level: self.level,
            trunc: self.trunc,
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            out.insert_raw(*k, f(c));
        }
        out
    }

    /// Product; at least one factor must have finite support. Weights add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (fin, inf) = match (self.trunc, other.trunc) {
            (None, _) => (self, other),
            (_, None) => (other, self),
            _ => {
                return Err(Error::Truncation(
                    "product of two truncated expansions is not determined".into(),
                ))
            }
        };
        let trunc = inf.trunc.map(|m| m - fin.max_abs_freq());
        if let Some(t) = trunc {
            if t < Q::zero() {
                return Err(Error::Truncation(format!(
                    "finite factor frequency {} exceeds truncation",
                    fin.max_abs_freq()
                )));
            }
        }
        let mut out = Expansion {
            weight: self.weight + other.weight,
            level: self.level.lcm(&other.level),
            trunc,
            terms: BTreeMap::new(),
        };
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let k = k1.mul(k2).ok_or_else(|| {
                    Error::UnsupportedTerm("product of two incomplete-gamma atoms".into())
                })?;
                out.insert_raw(k, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// ∂/∂u, same weight tag.
    pub fn d_u(&self) -> Self {
        let mut out = Expansion { terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            if k.u_pow > 0 {
                let nk = TermKey { u_pow: k.u_pow - 1, ..*k };
                out.insert_raw(nk, c.clone() * C::from_int(k.u_pow as i64));
            }
            if !k.u_freq.is_zero() {
                // 2πi n
                let f = ExactCoeff::i() * ExactCoeff::pi_pow(1) * q_to_exact(&(k.u_freq * 2));
                out.insert_raw(*k, c.clone() * C::from_exact(&f));
            }
        }
        out
    }

    /// ∂/∂v, same weight tag.
    pub fn d_v(&self) -> Self {
        let mut out = Expansion { terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            if k.v_pow != 0 {
                let nk = TermKey { v_pow: k.v_pow - 1, ..*k };
                out.insert_raw(nk, c.clone() * C::from_int(k.v_pow));
            }
            if k.log_pow > 0 {
                let nk = TermKey { v_pow: k.v_pow - 1, log_pow: k.log_pow - 1, ..*k };
                out.insert_raw(nk, c.clone() * C::from_int(k.log_pow as i64));
            }
            if !k.v_decay.is_zero() {
                let f = ExactCoeff::pi_pow(1) * q_to_exact(&(-k.v_decay * 2));
                out.insert_raw(*k, c.clone() * C::from_exact(&f));
            }
            if let Some(GammaAtom { s, lambda }) = k.gamma {
                // d/dv Γ(s, 4πλv) = -(4πλ)^s v^{s-1} e^{-4πλv}
                let nk = TermKey {
                    gamma: None,
                    v_pow: k.v_pow + s - 1,
                    v_decay: k.v_decay + lambda * 2,
                    ..*k
                };
                let f = -four_pi_lambda_pow(lambda, s);
                out.push(nk, c.clone() * C::from_exact(&f));
            }
        }
        out
    }

    /// Multiplication by v^a, same weight tag.
    pub fn mul_v_pow(&self, a: i64) -> Self {
        let mut out = Expansion { terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            out.insert_raw(TermKey { v_pow: k.v_pow + a, ..*k }, c.clone());
        }
        out
    }

    /// Complex conjugate of the function: conjugates coefficients and
    /// negates frequencies. Weight tag unchanged.
    pub fn conj_fn(&self) -> Self {
        let mut out = Expansion { terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            out.insert_raw(TermKey { u_freq: -k.u_freq, ..*k }, c.conj());
        }
        out
    }

    /// Vanishing test: exact for exact coefficients, relative to `scale` otherwise.
    pub fn zero_test(&self, scale: f64, tol: f64) -> ZeroTest {
        if C::EXACT {
            return ZeroTest { zero: self.terms.is_empty(), certainty: Certainty::Exact };
        }
        let zero = self.terms.values().all(|c| c.zero_test(scale, tol).zero);
        ZeroTest { zero, certainty: Certainty::Numeric }
    }

    /// Largest coefficient magnitude (for relative tests).
    pub fn scale_hint(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Compares two expansions on the common truncation range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = Self::min_trunc(self.trunc, other.trunc);
        match t {
            Some(m) => self.truncate(m).terms == other.truncate(m).terms,
            None => self.terms == other.terms,
        }
    }

    /// Terms without any u, v, log or atom dependence other than `q^n`.
    pub fn is_holomorphic_q_series(&self) -> bool {
        self.terms.keys().all(|k| k.is_holomorphic_q())
    }

    /// Coefficient of `q^n`.
    pub fn q_coeff(&self, n: i64) -> C {
        self.coeff_or_zero(&TermKey::q(q(n)))
    }
}

impl Expansion<ExactCoeff> {
    /// Holomorphic q-series from integer coefficients starting at `q^{start}`.
    pub fn from_q_series(
        weight: i64,
        trunc: i64,
        start: i64,
        coeffs: &[num_bigint::BigInt],
    ) -> Self {
        let mut e = Self::new(weight, Some(q(trunc)));
        for (i, c) in coeffs.iter().enumerate() {
            let n = start + i as i64;
            e.push(TermKey::q(q(n)), ExactCoeff::from_bigint(c.clone()));
        }
        e
    }
}

fn fmt_q(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for TermKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.u_pow > 0 {
            parts.push(if self.u_pow == 1 { "u".into() } else { format!("u^{}", self.u_pow) });
        }
        let n = self.u_freq;
        let w = self.v_decay;
        if !n.is_zero() && w == n {
            parts.push(format!("q^{}", fmt_q(&n)));
        } else if !n.is_zero() && w == -n {
            parts.push(format!("q̄^{}", fmt_q(&-n)));
        } else {
            if !n.is_zero() {
                parts.push(format!("e({}u)", fmt_q(&n)));
            }
            if !w.is_zero() {
                parts.push(format!("exp(-2π·{}v)", fmt_q(&w)));
            }
        }
        if self.v_pow != 0 {
            parts.push(if self.v_pow == 1 { "v".into() } else { format!("v^{}", self.v_pow) });
        }
        if self.log_pow > 0 {
            parts.push(if self.log_pow == 1 {
                "log(v)".into()
            } else {
                format!("log(v)^{}", self.log_pow)
            });
        }
        if let Some(GammaAtom { s, lambda }) = self.gamma {
            parts.push(format!("Γ({s},4π·{}v)", fmt_q(&lambda)));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

impl<C: Scalar> fmt::Display for Expansion<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[weight {}] ", self.weight)?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})·{k}")?;
        }
        match self.trunc {
            Some(m) => write!(f, " + O(|n|>{})", fmt_q(&m)),
            None => Ok(()),
        }
    }
}

impl<C: Scalar> fmt::Debug for Expansion<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact `q`-frequency helper: `Q::one()`.
pub fn q_one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    type E = Expansion<ExactCoeff>;

    fn int(n: i64) -> ExactCoeff {
        ExactCoeff::from_int(n)
    }

    #[test]
    fn merge_and_cancel() {
        let a = E::from_terms(0, Some(q(5)), [(TermKey::q(q(1)), int(1)), (TermKey::q(q(1)), int(1))]);
        assert_eq!(a.coeff(&TermKey::q(q(1))), Some(&int(2)));
        let b = E::from_terms(0, Some(q(5)), [(TermKey::q(q(1)), int(1)), (TermKey::q(q(1)), int(-1))]);
        assert!(b.is_empty());
        let pi = ExactCoeff::pi_pow(1);
        let c = E::from_terms(0, None, [(TermKey::one(), pi.clone()), (TermKey::one(), -pi)]);
        assert!(c.is_empty());
    }

    #[test]
    fn add_takes_min_trunc() {
        let a = E::from_terms(0, Some(q(5)), [(TermKey::q(q(-1)), int(1)), (TermKey::one(), int(24))]);
        let b = E::constant(0, int(-24));
        let s = a.add(&b).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.trunc(), Some(q(5)));
        assert!(a.add(&E::constant(2, int(1))).is_err());
    }

    #[test]
    fn product_of_keys() {
        let uv = E::from_terms(0, None, [(TermKey::v(-1).with_u_pow(1), int(1))]);
        let qq = E::from_terms(0, Some(q(3)), [(TermKey::q(q(1)), int(1))]);
        let p = uv.mul(&qq).unwrap();
        let k = TermKey { u_pow: 1, v_pow: -1, ..TermKey::q(q(1)) };
        assert_eq!(p.coeff(&k), Some(&int(1)));
        assert!(qq.mul(&qq).is_err());
    }

    #[test]
    fn gamma_atoms_normalize() {
        // Γ(1, x) = e^{-x}
        let e = E::from_terms(0, None, [(TermKey::one().with_gamma(1, q(1)), int(1))]);
        assert_eq!(e.coeff(&TermKey { v_decay: q(2), ..TermKey::one() }), Some(&int(1)));
        // Γ(-1, x) = -Γ(0, x) + x^{-1} e^{-x}
        let e = E::from_terms(0, None, [(TermKey::one().with_gamma(-1, q(1)), int(1))]);
        assert_eq!(e.coeff(&TermKey::one().with_gamma(0, q(1))), Some(&int(-1)));
        let k = TermKey { v_pow: -1, v_decay: q(2), ..TermKey::one() };
        let expect = ExactCoeff::pi_pow(-1).scale_rational(&rat(1, 4));
        assert_eq!(e.coeff(&k), Some(&expect));
    }

    #[test]
    fn atom_derivative_is_elementary() {
        let e = E::from_terms(0, None, [(TermKey::one().with_gamma(0, q(1)), int(1))]);
        let d = e.d_v();
        let k = TermKey { v_pow: -1, v_decay: q(2), ..TermKey::one() };
        assert_eq!(d.coeff(&k), Some(&int(-1)));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn derivative_rules() {
        // ∂_v (v^3 log v) = 3 v^2 log v + v^2
        let e = E::from_terms(0, None, [(TermKey::v(3).with_log_pow(1), int(1))]);
        let d = e.d_v();
        assert_eq!(d.coeff(&TermKey::v(2).with_log_pow(1)), Some(&int(3)));
        assert_eq!(d.coeff(&TermKey::v(2)), Some(&int(1)));
        // ∂_u q = 2πi q
        let e = E::from_terms(0, Some(q(2)), [(TermKey::q(q(1)), int(1))]);
        let expect = ExactCoeff::i() * ExactCoeff::pi_pow(1).scale_rational(&rat(2, 1));
        assert_eq!(e.d_u().coeff(&TermKey::q(q(1))), Some(&expect));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let e = E::from_terms(
            0,
            Some(q(4)),
            [
                (TermKey::q(q(1)).with_gamma(-2, q(1)), int(3)),
                (TermKey::v(2), int(1)),
            ],
        );
        assert_eq!(e.canonicalize(), e);
    }

    #[test]
    fn truncation_drops_high_frequencies() {
        let e = E::from_terms(0, Some(q(2)), [(TermKey::q(q(3)), int(1))]);
        assert!(e.is_empty());
    }

    #[test]
    fn level_tracks_denominators() {
        let e = E::from_terms(1, Some(q(5)), [(TermKey::q(Q::new(1, 23)), int(1))]);
        assert_eq!(e.level(), 23);
    }
}
