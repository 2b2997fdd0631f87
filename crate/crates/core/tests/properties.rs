use proptest::prelude::*;

use maasslab::json::{exact_to_json, expansion_from_json, AnyExpansion};
use maasslab::mfexp::{q, Expansion, TermKey, Q};
use maasslab::ExactCoeff;

mod common;
use common::{expansion, harmonic_data};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn commutation_relation(f in expansion()) {
        common::commutation(&f)?;
    }

    #[test]
    fn laplacian_routes_agree(f in expansion()) {
        common::laplacian_agreement(&f)?;
    }

    #[test]
    fn decompose_build_round_trip(d in harmonic_data()) {
        common::build_decompose(&d)?;
    }

    #[test]
    fn serialization_round_trip(f in expansion()) {
        common::serialize(&f)?;
    }
}

#[test]
fn truncation_is_kept() {
    let mut e = Expansion::<ExactCoeff>::new(2, Some(Q::new(7, 2)));
    e.push(TermKey::q(q(1)), ExactCoeff::from_int(1));
    let AnyExpansion::Exact(back) = expansion_from_json(&exact_to_json(&e)).unwrap() else { panic!() };
    assert_eq!(back.trunc(), Some(Q::new(7, 2)));
}
