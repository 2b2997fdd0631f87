//! Random exact expansions shared by the property and acceptance targets.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use maasslab::json::{exact_to_json, expansion_from_json, expansion_from_str, AnyExpansion};
use maasslab::maassops::{laplacian, laplacian_direct, lower, raise};
use maasslab::mfexp::decompose::{build, decompose, HarmonicData};
use maasslab::mfexp::{q, Expansion, TermKey};
use maasslab::{ExactCoeff, ExactExpansion};

pub fn coeff() -> impl Strategy<Value = ExactCoeff> {
    (-9i64..=9, 1i64..=5, -4i64..=4, 1i64..=3, -2i32..=2).prop_map(|(a, b, c, d, p)| {
        (ExactCoeff::ratio(a, b) + ExactCoeff::i() * ExactCoeff::ratio(c, d)) * ExactCoeff::pi_pow(p)
    })
}

pub fn nonzero_coeff() -> impl Strategy<Value = ExactCoeff> {
    coeff().prop_filter("nonzero", |c| *c != ExactCoeff::from_int(0))
}

/// A term of one of the shapes the operators act on: qⁿ, q̄-type growth,
/// polynomial factors in u, v and log v, and incomplete-gamma atoms.
pub fn key() -> impl Strategy<Value = TermKey> {
    let n = -3i64..=3;
    prop_oneof![
        (n.clone(), 0u32..=2, -3i64..=3, 0u32..=1).prop_map(|(n, up, vp, lp)| TermKey::q(q(n))
            .with_u_pow(up)
            .with_v_pow(vp)
            .with_log_pow(lp)),
        (n, -3i64..=3).prop_map(|(n, vp)| TermKey { u_freq: q(n), v_decay: q(-n), ..TermKey::one() }.with_v_pow(vp)),
        (1i64..=3, -2i64..=2, -2i64..=2).prop_map(|(l, s, vp)| TermKey::q(q(-l)).with_gamma(s, q(l)).with_v_pow(vp)),
    ]
}

pub fn expansion() -> impl Strategy<Value = ExactExpansion> {
    (-6i64..=6, prop::option::of(3i64..=6), prop::collection::vec((key(), coeff()), 1..6)).prop_map(
        |(k, m, terms)| {
            let mut e = Expansion::new(k, m.map(q));
            for (key, c) in terms {
                e.push(key, c);
            }
            e
        },
    )
}

pub fn harmonic_data() -> impl Strategy<Value = HarmonicData<ExactCoeff>> {
    (-6i64..=6, prop::collection::btree_map(-3i64..=4, nonzero_coeff(), 0..5), prop::collection::btree_map(-3i64..=3, nonzero_coeff(), 0..4))
        .prop_map(|(k, plus, minus)| {
            let mut d = HarmonicData::new(k, Some(q(5)));
            d.plus = plus.into_iter().map(|(n, c)| (q(n), c)).collect();
            // growing nonholomorphic terms are elementary only for k ≤ 0
            d.minus = minus.into_iter().filter(|(n, _)| k <= 0 || *n <= 0).map(|(n, c)| (q(n), c)).collect();
            d
        })
}

pub fn commutation(f: &ExactExpansion) -> Result<(), TestCaseError> {
    let k = f.weight();
    let lhs = raise(&lower(f)).sub(&lower(&raise(f))).unwrap();
    let rhs = f.scale(&ExactCoeff::from_int(k));
    prop_assert!(lhs.sub(&rhs).unwrap().is_empty(), "R L - L R != {k} on {f}");
    Ok(())
}

pub fn laplacian_agreement(f: &ExactExpansion) -> Result<(), TestCaseError> {
    prop_assert!(laplacian(f).sub(&laplacian_direct(f)).unwrap().is_empty(), "Δ routes differ on {f}");
    Ok(())
}

pub fn build_decompose(d: &HarmonicData<ExactCoeff>) -> Result<(), TestCaseError> {
    let e = build(d).unwrap();
    let back = decompose(&e);
    prop_assert_eq!(&back.data, d);
    prop_assert_eq!(build(&back.data).unwrap(), e);
    Ok(())
}

pub fn serialize(f: &ExactExpansion) -> Result<(), TestCaseError> {
    let j = exact_to_json(f);
    prop_assert_eq!(expansion_from_json(&j).unwrap(), AnyExpansion::Exact(f.clone()));
    let s = serde_json::to_string(&j).unwrap();
    prop_assert_eq!(expansion_from_str(&s).unwrap(), AnyExpansion::Exact(f.clone()));
    Ok(())
}
