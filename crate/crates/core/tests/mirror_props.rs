use dualis::calculus::{builtin_calculus, BuiltinId, Calculus, Sequent};
use dualis::engine::{check_proof, search, SearchConfig, SearchResult};
use dualis::formula::Formula;
use dualis::stahlize::{mirror_proof, mirror_sequent, stahlize_calculus};
use proptest::prelude::*;

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::atom("p")), Just(Formula::atom("q"))];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

fn arb_sequent() -> impl Strategy<Value = Sequent> {
    (prop::collection::vec(arb_formula(), 0..=3), prop::collection::vec(arb_formula(), 0..=3))
        .prop_map(|(a, s)| Sequent::new(a, s))
}

fn transport(c: &Calculus, s: &Sequent) -> Result<(), TestCaseError> {
    let dual = stahlize_calculus(c);
    let cfg = SearchConfig::default();
    let direct = search(&dual, s, &cfg).unwrap();
    let via = search(c, &mirror_sequent(s), &cfg).unwrap();
    prop_assert_eq!(direct.verdict(), via.verdict(), "{} on {}", dual.name, s);
    if let SearchResult::Proved(p) = &via {
        prop_assert!(check_proof(c, p).is_valid());
        let m = mirror_proof(p);
        prop_assert_eq!(&m.sequent, s);
        let v = check_proof(&dual, &m);
        prop_assert!(v.is_valid(), "{}", v);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn mirror_sequent_is_an_involution(s in arb_sequent()) {
        prop_assert_eq!(mirror_sequent(&mirror_sequent(&s)), s);
    }

    #[test]
    fn classical_transport(s in arb_sequent()) {
        transport(&builtin_calculus(BuiltinId::Lk), &s)?;
    }

    #[test]
    fn intuitionistic_transport(s in arb_sequent()) {
        transport(&builtin_calculus(BuiltinId::Lj), &s)?;
    }
}

#[test]
fn stahlize_keeps_bound_check() {
    for id in BuiltinId::ALL {
        let c = builtin_calculus(id);
        assert!(c.check_bounds().is_ok(), "{id}");
        let d = stahlize_calculus(&c);
        assert!(d.check_bounds().is_ok(), "{id}");
        assert_eq!((d.antecedent_bound, d.succedent_bound), (c.succedent_bound, c.antecedent_bound));
        assert!(d.duplicate_rule_names().is_empty());
    }
}

#[test]
fn json_round_trip_commutes_with_stahlize() {
    for id in BuiltinId::ALL {
        let c = builtin_calculus(id);
        let text = stahlize_calculus(&c).to_json();
        let back = Calculus::from_json(&text).unwrap();
        assert_eq!(stahlize_calculus(&back), c, "{id}");
    }
}
