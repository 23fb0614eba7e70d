use super::EngineError;
use crate::calculus::Sequent;
use crate::formula::Formula;
use crate::semantics::sequent_valid;

/// Moves the negation at `index` of the succedent to the antecedent as its
/// unnegated body, appended at the end.
pub fn invert_negation(s: &Sequent, index: usize) -> Result<Sequent, EngineError> {
    let len = s.succedent.len();
    let Some(target) = s.succedent.get(index) else {
        return Err(EngineError::IndexOutOfRange { index, len });
    };
    let Formula::Not(body) = target else {
        return Err(EngineError::NotANegation(target.to_string()));
    };
    let mut out = s.clone();
    out.antecedent.push((**body).clone());
    out.succedent.remove(index);
    Ok(out)
}

/// Classical validity by truth table.
pub fn decide_classical(s: &Sequent) -> Result<bool, EngineError> {
    if !s.is_propositional() {
        return Err(EngineError::NotPropositional(s.to_string()));
    }
    Ok(sequent_valid(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(invert_negation(&seq("|- p, ~p"), 1).unwrap(), seq("p |- p"));
        assert_eq!(invert_negation(&seq("q |- ~(p & q)"), 0).unwrap(), seq("q, p & q |-"));
    }

    #[test]
    fn inversion_errors() {
        assert_eq!(invert_negation(&seq("|- p"), 3), Err(EngineError::IndexOutOfRange { index: 3, len: 1 }));
        assert!(matches!(invert_negation(&seq("|- p"), 0), Err(EngineError::NotANegation(_))));
    }

    #[test]
    fn classical_decisions() {
        assert!(decide_classical(&seq("p |- p")).unwrap());
        assert!(!decide_classical(&seq("|- p")).unwrap());
        assert!(!decide_classical(&seq("p | q |- p")).unwrap());
        assert!(matches!(decide_classical(&seq("|- P(a)")), Err(EngineError::NotPropositional(_))));
    }
}
