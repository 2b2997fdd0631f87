//! Maass operator calculus on expansions: raising, lowering, ξ, D^{1-k},
//! the weight-k Laplacian, the flip and the conjugate twist.
//!
//! Everything is built from the two partial derivatives of the term algebra,
//! so the operators are exact in exact mode and commute with truncation.

use std::fmt;
use std::str::FromStr;

use crate::arith::factorial;
use crate::coeffring::{ExactCoeff, Scalar};
use crate::error::{Error, Result};
use crate::mfexp::Expansion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Raise,
    Lower,
    Xi,
    DPow,
    Laplacian,
    Flip,
    BarTwist,
}

impl OpKind {
    /// Weight of the output for input weight k.
    pub fn weight_out(&self, k: i64) -> i64 {
        match self {
            OpKind::Raise => k + 2,
            OpKind::Lower => k - 2,
            OpKind::Xi | OpKind::DPow => 2 - k,
            OpKind::Laplacian | OpKind::Flip => k,
            OpKind::BarTwist => -k,
        }
    }

    /// Whether the operator is defined at input weight k.
    pub fn accepts(&self, k: i64) -> bool {
        match self {
            OpKind::DPow | OpKind::Flip => k <= 0,
            _ => true,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            OpKind::Raise => "R",
            OpKind::Lower => "L",
            OpKind::Xi => "xi",
            OpKind::DPow => "D",
            OpKind::Laplacian => "Delta",
            OpKind::Flip => "F",
            OpKind::BarTwist => "bar",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for OpKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "R" | "raise" => OpKind::Raise,
            "L" | "lower" => OpKind::Lower,
            "xi" | "XI" | "ξ" => OpKind::Xi,
            "D" | "dpow" => OpKind::DPow,
            "Delta" | "laplacian" | "Δ" => OpKind::Laplacian,
            "F" | "flip" => OpKind::Flip,
            "bar" | "bar_twist" => OpKind::BarTwist,
            other => return Err(Error::BadParameter(format!("unknown operator {other:?}"))),
        })
    }
}

/// Parses a comma separated chain such as `"L,L,R"`, applied left to right.
pub fn parse_chain(s: &str) -> Result<Vec<OpKind>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

/// Checks the weight bookkeeping of a chain before running it; returns the
/// final weight.
pub fn check_chain(chain: &[OpKind], k: i64) -> Result<i64> {
    let mut w = k;
    for op in chain {
        if !op.accepts(w) {
            return Err(Error::Domain(format!("{op} is not defined at weight {w}")));
        }
        w = op.weight_out(w);
    }
    Ok(w)
}

pub fn apply<C: Scalar>(op: OpKind, f: &Expansion<C>) -> Result<Expansion<C>> {
    Ok(match op {
        OpKind::Raise => raise(f),
        OpKind::Lower => lower(f),
        OpKind::Xi => xi(f),
        OpKind::DPow => d_power(f)?,
        OpKind::Laplacian => laplacian(f),
        OpKind::Flip => flip(f)?,
        OpKind::BarTwist => bar_twist(f),
    })
}

pub fn apply_chain<C: Scalar>(chain: &[OpKind], f: &Expansion<C>) -> Result<Expansion<C>> {
    check_chain(chain, f.weight())?;
    let mut g = f.clone();
    for op in chain {
        g = apply(*op, &g)?;
    }
    Ok(g)
}

fn add<C: Scalar>(a: &Expansion<C>, b: &Expansion<C>) -> Expansion<C> {
    a.add(b).expect("operands share a weight tag")
}

/// R_k = i∂_u + ∂_v + k/v.
pub fn raise<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    let k = f.weight();
    let a = f.d_u().scale(&C::i());
    let b = f.d_v();
    let c = f.mul_v_pow(-1).scale(&C::from_int(k));
    add(&add(&a, &b), &c).retag(k + 2)
}

/// L_k = -iv²∂_u + v²∂_v.
pub fn lower<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    let k = f.weight();
    let a = f.d_u().scale(&-C::i());
    let b = f.d_v();
    add(&a, &b).mul_v_pow(2).retag(k - 2)
}

pub fn raise_n<C: Scalar>(f: &Expansion<C>, n: u32) -> Expansion<C> {
    (0..n).fold(f.clone(), |g, _| raise(&g))
}

pub fn lower_n<C: Scalar>(f: &Expansion<C>, n: u32) -> Expansion<C> {
    (0..n).fold(f.clone(), |g, _| lower(&g))
}

/// v^k · conj(f), weight -k.
pub fn bar_twist<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    let k = f.weight();
    f.conj_fn().mul_v_pow(k).retag(-k)
}

/// ξ_k f = v^{k-2} · conj(L_k f), weight 2-k.
pub fn xi<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    let k = f.weight();
    lower(f).conj_fn().mul_v_pow(k - 2).retag(2 - k)
}

/// D = (1/2πi) ∂_τ = (1/4πi)(∂_u - i∂_v), weight unchanged.
fn d_once<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    let k = f.weight();
    let a = f.d_u();
    let b = f.d_v().scale(&-C::i());
    let factor = ExactCoeff::i() * ExactCoeff::ratio(-1, 4) * ExactCoeff::pi_pow(-1);
    add(&a, &b).scale(&C::from_exact(&factor)).retag(k)
}

/// D^{1-k} for k ≤ 0, weight 2-k.
pub fn d_power<C: Scalar>(f: &Expansion<C>) -> Result<Expansion<C>> {
    let k = f.weight();
    if k > 0 {
        return Err(Error::Domain(format!("D^(1-k) needs k ≤ 0, got k = {k}")));
    }
    let g = (0..(1 - k)).fold(f.clone(), |g, _| d_once(&g));
    Ok(g.retag(2 - k))
}

/// Δ_k = -R_{k-2} ∘ L_k.
pub fn laplacian<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    raise(&lower(f)).neg()
}

/// Δ_k = -v²(∂_u² + ∂_v²) + ikv(∂_u + i∂_v), computed directly.
pub fn laplacian_direct<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    let k = f.weight();
    let uu = f.d_u().d_u();
    let vv = f.d_v().d_v();
    let second = add(&uu, &vv).mul_v_pow(2).neg();
    let first = add(&f.d_u(), &f.d_v().scale(&C::i()))
        .mul_v_pow(1)
        .scale(&(C::i() * C::from_int(k)));
    add(&second, &first)
}

/// 𝔉_k f = v^{-k}/(-k)! · conj(R_k^{-k} f), for k ≤ 0.
pub fn flip<C: Scalar>(f: &Expansion<C>) -> Result<Expansion<C>> {
    let k = f.weight();
    if k > 0 {
        return Err(Error::Domain(format!("the flip needs k ≤ 0, got k = {k}")));
    }
    let r = raise_n(f, (-k) as u32);
    let inv = ExactCoeff::from_rational(num_rational::BigRational::new(
        1.into(),
        factorial((-k) as u64),
    ));
    Ok(bar_twist(&r).scale(&C::from_exact(&inv)))
}

/// Δ_{k,2} = -ξ_k ∘ ξ_{2-k} ∘ ξ_k.
pub fn sesqui_laplacian<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    xi(&xi(&xi(f))).neg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mfexp::{q, TermKey};

    type E = Expansion<ExactCoeff>;

    fn int(n: i64) -> ExactCoeff {
        ExactCoeff::from_int(n)
    }

    #[test]
    fn raise_of_v_at_weight_zero() {
        let f = E::from_terms(0, None, [(TermKey::v(1), int(1))]);
        let g = raise(&f);
        assert_eq!(g.weight(), 2);
        assert_eq!(g, E::constant(2, int(1)));
    }

    #[test]
    fn lower_kills_q_series() {
        let f = E::from_terms(4, Some(q(3)), [(TermKey::q(q(1)), int(3)), (TermKey::q(q(2)), int(-5))]);
        assert!(lower(&f).is_empty());
    }

    #[test]
    fn lower_of_power_and_log() {
        // L(v^s q^n) = s v^{s+1} q^n, L(log v) = v
        let f = E::from_terms(0, Some(q(3)), [(TermKey::q(q(2)).with_v_pow(3), int(1))]);
        assert_eq!(lower(&f).coeff(&TermKey::q(q(2)).with_v_pow(4)), Some(&int(3)));
        let g = E::from_terms(0, None, [(TermKey::one().with_log_pow(1), int(1))]);
        assert_eq!(lower(&g), E::from_terms(-2, None, [(TermKey::v(1), int(1))]));
    }

    #[test]
    fn laplacian_kills_v_power() {
        for k in [-4i64, 0, 3] {
            let f = E::from_terms(k, None, [(TermKey::v(1 - k), int(1))]);
            assert!(laplacian(&f).is_empty());
            assert!(laplacian_direct(&f).is_empty());
        }
    }

    #[test]
    fn bar_twist_of_q() {
        let f = E::from_terms(12, Some(q(2)), [(TermKey::q(q(1)), int(1))]);
        let g = bar_twist(&f);
        assert_eq!(g.weight(), -12);
        assert_eq!(g.coeff(&TermKey::qbar(q(1)).with_v_pow(12)), Some(&int(1)));
    }

    #[test]
    fn flip_of_one() {
        let f = E::constant(0, int(1));
        assert_eq!(flip(&f).unwrap(), f);
        assert!(flip(&E::constant(2, int(1))).is_err());
    }

    #[test]
    fn commutation_on_mixed_terms() {
        let k = -3;
        let f = E::from_terms(
            k,
            Some(q(4)),
            [
                (TermKey::q(q(1)).with_v_pow(2).with_log_pow(1), int(2)),
                (TermKey::q(q(-2)).with_gamma(0, q(2)), ExactCoeff::pi_pow(-1)),
                (TermKey::qbar(q(3)).with_u_pow(2), ExactCoeff::i()),
            ],
        );
        let lhs = raise(&lower(&f));
        let rhs = lower(&raise(&f)).add(&f.scale(&int(k))).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(laplacian(&f), laplacian_direct(&f));
    }

    #[test]
    fn chain_weights() {
        let chain = parse_chain("L,L,R").unwrap();
        assert_eq!(check_chain(&chain, 2).unwrap(), 0);
        assert!(check_chain(&[OpKind::Flip], 2).is_err());
    }
}
