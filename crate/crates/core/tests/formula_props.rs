use std::collections::BTreeSet;

use dualis::formula::{parse_formula, print_formula, Formula, Term};
use proptest::prelude::*;

fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(|v| Term::Var(v.into())),
        prop::sample::select(vec!["a", "b"]).prop_map(|c| Term::Const(c.into())),
    ]
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::atom),
        (prop::sample::select(vec!["P", "Q"]), prop::collection::vec(arb_term(), 1..3))
            .prop_map(|(p, args)| Formula::Pred(p.into(), args)),
    ];
    leaf.prop_recursive(8, 64, 2, |inner| {
        let var = prop::sample::select(vec!["x", "y", "z"]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (var.clone(), inner.clone()).prop_map(|(v, b)| Formula::forall(v, b)),
            (var, inner).prop_map(|(v, b)| Formula::exists(v, b)),
        ]
    })
}

fn depth(f: &Formula) -> usize {
    match f {
        Formula::Atom(_) | Formula::Pred(..) => 0,
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + depth(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + depth(a).max(depth(b)),
    }
}

/// Alpha-equivalence by walking both trees with paired binder stacks.
fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    fn term_eq(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
        match (s, t) {
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::Var(a), Term::Var(b)) => {
                let left = env.iter().rev().position(|(x, _)| x == a);
                let right = env.iter().rev().position(|(_, y)| y == b);
                match (left, right) {
                    (None, None) => a == b,
                    (l, r) => l == r,
                }
            }
            _ => false,
        }
    }
    fn go(f: &Formula, g: &Formula, env: &mut Vec<(String, String)>) -> bool {
        match (f, g) {
            (Formula::Atom(a), Formula::Atom(b)) => a == b,
            (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
                p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| term_eq(s, t, env))
            }
            (Formula::Not(a), Formula::Not(b)) => go(a, b, env),
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Imp(a, b), Formula::Imp(c, d)) => go(a, c, env) && go(b, d, env),
            (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                env.push((x.clone(), y.clone()));
                let ok = go(a, b, env);
                env.pop();
                ok
            }
            _ => false,
        }
    }
    go(f, g, &mut Vec::new())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn print_then_parse_is_identity(f in arb_formula()) {
        prop_assume!(depth(&f) <= 8);
        let text = print_formula(&f);
        let back = parse_formula(&text);
        prop_assert!(back.is_ok(), "printer emitted unparsable {text:?}");
        prop_assert_eq!(back.unwrap(), f);
    }

    #[test]
    fn substituting_a_variable_for_itself(f in arb_formula(), v in prop::sample::select(vec!["x", "y", "z"])) {
        let g = f.substitute(v, &Term::Var(v.into()));
        prop_assert!(alpha_eq(&f, &g), "{f} became {g}");
    }

    #[test]
    fn substitution_free_variables(
        f in arb_formula(),
        v in prop::sample::select(vec!["x", "y", "z"]),
        t in arb_term(),
    ) {
        let g = f.substitute(v, &t);
        let mut want: BTreeSet<String> = f.free_vars();
        if want.remove(v) {
            if let Term::Var(w) = &t {
                want.insert(w.clone());
            }
        }
        prop_assert_eq!(g.free_vars(), want, "{} [{}/{}] = {}", f, t, v, g);
        prop_assert_eq!(g.size(), f.size());
    }

    #[test]
    fn propositional_formulas_are_closed(f in arb_formula()) {
        if f.is_propositional() {
            prop_assert!(f.free_vars().is_empty());
        }
    }
}

#[test]
fn capture_is_avoided() {
    let f = parse_formula("forall y. P(x, y)").unwrap();
    let g = f.substitute("x", &Term::Var("y".into()));
    assert_eq!(g.to_string(), "forall y'. P(y, y')");
    assert!(alpha_eq(&g, &parse_formula("forall w. P(y, w)").unwrap()));
    assert!(!alpha_eq(&g, &parse_formula("forall y. P(y, y)").unwrap()));
}
