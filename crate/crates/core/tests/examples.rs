use semilab_core::engine::{enumerate, green_scc, iso_tables, Budget, FiniteSemigroup, Green};
use semilab_core::identities::{catalogue, check_identity_exhaustive, classify, EntryStatus, Identity, IdentityError, Verdict};
use semilab_core::report::B2_PRESENTATION;
use semilab_core::stephen::{Presentation, PresentationOracle, StephenBudget};
use semilab_core::zoo::{b2, b2_with_identity, mn_table, parse_finite_spec, sw_semigroup};

fn satisfied(c: &std::collections::BTreeMap<String, EntryStatus>, key: &str) -> bool {
    matches!(c[key], EntryStatus::Satisfied)
}

#[test]
fn b2_classification() {
    let c = classify(&b2());
    for key in ["I", "inverse", "inverse-alt", "SI", "C_2"] {
        assert!(satisfied(&c, key), "{key}: {:?}", c[key]);
    }
    assert!(matches!(c["C_1"], EntryStatus::Fails { .. }));
    assert!(matches!(c["nil_3"], EntryStatus::Fails { .. }));
    assert!(matches!(c["CR"], EntryStatus::Fails { .. }));
    assert!(matches!(c["ROL*"], EntryStatus::NotApplicable(_)));
}

#[test]
fn inverse_axiomatizations_agree_on_inverse_members() {
    let members = [b2(), b2_with_identity(), mn_table(3).unwrap(), mn_table(4).unwrap()];
    for fs in &members {
        let c = classify(fs);
        assert!(satisfied(&c, "I") && satisfied(&c, "inverse") && satisfied(&c, "inverse-alt"), "{} elements", fs.len());
    }
}

#[test]
fn sw_is_in_c2_without_a_unary() {
    let c = classify(&sw_semigroup(4).unwrap());
    assert!(satisfied(&c, "C_2"));
    assert!(satisfied(&c, "nil_2"));
    assert!(matches!(c["inverse"], EntryStatus::NotApplicable(_)));
}

#[test]
fn trivial_semigroup_satisfies_everything() {
    let t = FiniteSemigroup::new(vec!["e".into()], vec![0], Some(vec![0]), vec![]).unwrap();
    let c = classify(&t);
    assert_eq!(c.len(), catalogue().len());
    assert!(c.values().all(|s| matches!(s, EntryStatus::Satisfied)), "{c:?}");
}

#[test]
fn budget_refusal_names_the_count() {
    let big = parse_finite_spec("transf:4:1:3").unwrap();
    let id = Identity::parse("xyzwv = vwzyx").unwrap();
    match check_identity_exhaustive(&big, &id) {
        Err(IdentityError::TooLarge { required }) => assert_eq!(required, (big.len() as u64).pow(5)),
        other if big.len().pow(5) <= 10_000_000 => assert!(other.is_ok()),
        other => panic!("{other:?}"),
    }
    assert_eq!(check_identity_exhaustive(&b2(), &Identity::parse("x = x").unwrap()).unwrap(), Verdict::Holds);
}

#[test]
fn zero_free_b2_presentation() {
    let p = Presentation::parse(B2_PRESENTATION).unwrap();
    let oracle = PresentationOracle::new(&p, StephenBudget::default());
    let fs = enumerate(&oracle, &oracle.generators(), Budget::default()).unwrap().into_semigroup().unwrap();
    assert!(!oracle.incomplete());
    assert!(iso_tables(&fs, &b2()).unwrap().is_some());
    assert_eq!(green_scc(&fs).counts(), [5, 3, 3, 2, 2]);
}

#[test]
fn zoo_product_examples() {
    let g = green_scc(&parse_finite_spec("prod:rz:3,null:2").unwrap());
    assert_eq!(g.count(Green::R), 4);
    let n = green_scc(&parse_finite_spec("np:4").unwrap());
    assert_eq!(n.counts(), [5; 5]);
}
