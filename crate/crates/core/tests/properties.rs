use proptest::prelude::*;

use superder::almostinner::{classify_derivation, AIStatus, ClassifyConfig};
use superder::catalog;
use superder::derivations::{is_inner, outer_data, Derivation};
use superder::exactmath::Scalar;
use superder::io::{algebra_from_json, algebra_to_json};
use superder::quasired::is_quasireductive;

const SPECS: &[&str] = &["sl:2,1", "osp:1,2", "psq:3", "example:even", "takiff:sl:2", "spe:3", "W:3"];

#[test]
fn catalog_json_roundtrip() {
    for spec in SPECS {
        let l = catalog::build(spec).unwrap().algebra;
        let json = algebra_to_json(&l);
        let back = algebra_from_json(&json).unwrap();
        assert_eq!(back, l, "{spec}");
        assert_eq!(algebra_to_json(&back), json);
    }
}

#[test]
fn spec_display_roundtrip() {
    for spec in SPECS.iter().chain(&["blocksuper:n=2,k=1,A=zero,C=zero", "D21a:2", "sum:sl:2,1|psq:3"]) {
        let parsed = catalog::AlgebraSpec::parse(spec).unwrap();
        let again = catalog::AlgebraSpec::parse(&parsed.to_string()).unwrap();
        assert_eq!(again.build().unwrap().algebra, parsed.build().unwrap().algebra, "{spec}");
    }
}

#[test]
fn outer_reps_are_not_inner() {
    for spec in ["psl:2,2", "SH:5", "psq:3"] {
        let l = catalog::build(spec).unwrap().algebra;
        for d in outer_data(&l).unwrap().outer_reps {
            assert!(is_inner(&l, &d).is_none(), "{spec}");
        }
    }
}

#[test]
fn quasireductive_sums() {
    let qr = |s: &str| is_quasireductive(&catalog::build(s).unwrap().algebra).unwrap().is_quasireductive;
    assert!(qr("sum:psq:3|takiff:sl:2"));
    assert!(!qr("sum:psq:3|lie:uppertri:3"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inner_derivations_classify_inner(seed in 0u64..1000, idx in 0usize..4, coeffs in prop::collection::vec(-4i64..=4, 8)) {
        let spec = ["sl:2,1", "osp:1,2", "example:even", "takiff:sl:2"][idx];
        let l = catalog::build(spec).unwrap().algebra;
        let even = l.indices(superder::supercore::Parity::Even);
        let mut a = vec![Scalar::zero(); l.dim()];
        for (k, &i) in even.iter().enumerate() {
            a[i] = Scalar::from_int(coeffs[k % coeffs.len()]);
        }
        let d = Derivation::inner(&l, &a).unwrap();
        let cfg = ClassifyConfig { seed, samples: 4, ..Default::default() };
        let status = classify_derivation(&l, &d, &[], Vec::new(), &cfg);
        prop_assert!(matches!(status, AIStatus::Inner(_)));
    }
}
