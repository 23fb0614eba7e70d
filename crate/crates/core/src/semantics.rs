//! Classical truth-table oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::calculus::Sequent;
use crate::formula::Formula;

/// Upper limit on atoms for exhaustive enumeration.
pub const MAX_ATOMS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("valuation has no value for atom `{0}`")]
    MissingAtom(String),
    #[error("formula `{0}` is not propositional")]
    NotPropositional(String),
    #[error("{0} atoms exceed the enumeration limit of {MAX_ATOMS}")]
    TooManyAtoms(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<String, bool>);

impl Valuation {
    pub fn new(values: impl IntoIterator<Item = (String, bool)>) -> Valuation {
        Valuation(values.into_iter().collect())
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.0.get(atom).copied()
    }

    /// The valuation numbered `bits` over `atoms` (bit i gives atom i).
    fn nth(atoms: &[String], bits: u64) -> Valuation {
        Valuation(atoms.iter().enumerate().map(|(i, a)| (a.clone(), bits >> i & 1 == 1)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Tautology,
    Contradiction,
    Contingent,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Tautology => "Tautology",
            Classification::Contradiction => "Contradiction",
            Classification::Contingent => "Contingent",
        })
    }
}

pub fn eval(f: &Formula, v: &Valuation) -> Result<bool, SemanticsError> {
    Ok(match f {
        Formula::Atom(a) => v.get(a).ok_or_else(|| SemanticsError::MissingAtom(a.clone()))?,
        Formula::Not(a) => !eval(a, v)?,
        Formula::And(a, b) => eval(a, v)? && eval(b, v)?,
        Formula::Or(a, b) => eval(a, v)? || eval(b, v)?,
        Formula::Imp(a, b) => !eval(a, v)? || eval(b, v)?,
        Formula::Pred(..) | Formula::Forall(..) | Formula::Exists(..) => {
            return Err(SemanticsError::NotPropositional(f.to_string()))
        }
    })
}

fn atom_list<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Result<Vec<String>, SemanticsError> {
    let mut atoms = BTreeSet::new();
    for f in fs {
        if !f.is_propositional() {
            return Err(SemanticsError::NotPropositional(f.to_string()));
        }
        f.collect_atoms(&mut atoms);
    }
    if atoms.len() > MAX_ATOMS {
        return Err(SemanticsError::TooManyAtoms(atoms.len()));
    }
    Ok(atoms.into_iter().collect())
}

fn valuations(atoms: &[String]) -> impl Iterator<Item = Valuation> + '_ {
    (0..1u64 << atoms.len()).map(move |bits| Valuation::nth(atoms, bits))
}

pub fn classify(f: &Formula) -> Result<Classification, SemanticsError> {
    let atoms = atom_list([f])?;
    let (mut some_true, mut some_false) = (false, false);
    for v in valuations(&atoms) {
        if eval(f, &v)? {
            some_true = true;
        } else {
            some_false = true;
        }
        if some_true && some_false {
            return Ok(Classification::Contingent);
        }
    }
    Ok(if some_true { Classification::Tautology } else { Classification::Contradiction })
}

/// Every valuation satisfying the whole antecedent satisfies some
/// succedent formula. An empty antecedent is true, an empty succedent false.
pub fn sequent_valid(s: &Sequent) -> Result<bool, SemanticsError> {
    let atoms = atom_list(s.formulas())?;
    for v in valuations(&atoms) {
        let mut ant = true;
        for f in &s.antecedent {
            if !eval(f, &v)? {
                ant = false;
                break;
            }
        }
        if !ant {
            continue;
        }
        let mut suc = false;
        for f in &s.succedent {
            if eval(f, &v)? {
                suc = true;
                break;
            }
        }
        if !suc {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use proptest::prelude::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn val(pairs: &[(&str, bool)]) -> Valuation {
        Valuation::new(pairs.iter().map(|(a, b)| (a.to_string(), *b)))
    }

    #[test]
    fn eval_examples() {
        assert!(!eval(&f("p -> q"), &val(&[("p", true), ("q", false)])).unwrap());
        for b in [true, false] {
            assert!(eval(&f("p | ~p"), &val(&[("p", b)])).unwrap());
        }
        assert!(!eval(&f("~(p & q)"), &val(&[("p", true), ("q", true)])).unwrap());
    }

    #[test]
    fn eval_errors() {
        assert_eq!(eval(&f("p & q"), &val(&[("p", true)])), Err(SemanticsError::MissingAtom("q".into())));
        assert!(matches!(eval(&f("P(a)"), &val(&[])), Err(SemanticsError::NotPropositional(_))));
        assert!(matches!(classify(&f("forall x. P(x)")), Err(SemanticsError::NotPropositional(_))));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&f("p | ~p")).unwrap(), Classification::Tautology);
        assert_eq!(classify(&f("p & ~p")).unwrap(), Classification::Contradiction);
        assert_eq!(classify(&f("p -> q")).unwrap(), Classification::Contingent);
        assert_eq!(classify(&f("(p -> q) -> p")).unwrap(), Classification::Contingent);
    }

    #[test]
    fn sequent_examples() {
        assert!(sequent_valid(&Sequent::parse("p |- p").unwrap()).unwrap());
        assert!(sequent_valid(&Sequent::parse("p & ~p |-").unwrap()).unwrap());
        assert!(!sequent_valid(&Sequent::parse("|- p, q").unwrap()).unwrap());
        assert!(!sequent_valid(&Sequent::parse("|-").unwrap()).unwrap());
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![Just(Formula::atom("p")), Just(Formula::atom("q")), Just(Formula::atom("r"))];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn classification_matches_sequents(a in arb_formula()) {
            let c = classify(&a).unwrap();
            let thesis = sequent_valid(&Sequent::new(vec![], vec![a.clone()])).unwrap();
            let refutable = sequent_valid(&Sequent::new(vec![a.clone()], vec![])).unwrap();
            prop_assert_eq!(c == Classification::Tautology, thesis);
            prop_assert_eq!(c == Classification::Contradiction, refutable);
            let mirrored = Sequent::new(vec![], vec![a]).mirror();
            prop_assert_eq!(sequent_valid(&mirrored).unwrap(), c == Classification::Contradiction);
        }

        #[test]
        fn de_morgan(a in arb_formula(), b in arb_formula()) {
            let lhs = Formula::not(Formula::and(a.clone(), b.clone()));
            let rhs = Formula::or(Formula::not(a), Formula::not(b));
            prop_assert_eq!(classify(&lhs).unwrap(), classify(&rhs).unwrap());
        }
    }
}
