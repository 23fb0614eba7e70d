use std::sync::Arc;

use super::{Binding, Bounds, CalculusError, Pattern, RuleSchema, SchemaItem, SchematicSequent, Sequent};
use crate::formula::{Formula, Term};

/// How the lists of a sequent are compared against a schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchMode {
    Ordered,
    Multiset,
}

/// Extends `b` so that `p` instantiates to `f`. Leaves `b` untouched on
/// failure.
pub(crate) fn match_pattern(p: &Pattern, f: &Formula, b: &mut Binding) -> bool {
    let snapshot = b.clone();
    let ok = match_pattern_inner(p, f, b);
    if !ok {
        *b = snapshot;
    }
    ok
}

fn bind_formula(b: &mut Binding, name: &str, f: &Formula) -> bool {
    match b.formulas.get(name) {
        Some(existing) => existing == f,
        None => {
            b.formulas.insert(name.to_string(), f.clone());
            true
        }
    }
}

fn bind_term(b: &mut Binding, name: &str, t: Term) -> bool {
    match b.terms.get(name) {
        Some(existing) => *existing == t,
        None => {
            b.terms.insert(name.to_string(), t);
            true
        }
    }
}

fn match_pattern_inner(p: &Pattern, f: &Formula, b: &mut Binding) -> bool {
    match (p, f) {
        (Pattern::Meta { name }, _) => bind_formula(b, name, f),
        (Pattern::Not { arg }, Formula::Not(x)) => match_pattern_inner(arg, x, b),
        (Pattern::And { lhs, rhs }, Formula::And(x, y))
        | (Pattern::Or { lhs, rhs }, Formula::Or(x, y))
        | (Pattern::Imp { lhs, rhs }, Formula::Imp(x, y)) => {
            match_pattern_inner(lhs, x, b) && match_pattern_inner(rhs, y, b)
        }
        (Pattern::Forall { var, body }, Formula::Forall(v, x))
        | (Pattern::Exists { var, body }, Formula::Exists(v, x)) => {
            bind_term(b, var, Term::Var(v.clone())) && match_pattern_inner(body, x, b)
        }
        // Substitution instances can only be compared, not inverted.
        (Pattern::Subst { .. }, _) => match instantiate_pattern("", p, b) {
            Ok(g) => g == *f,
            Err(_) => false,
        },
        _ => false,
    }
}

fn match_item(item: &SchemaItem, f: &Formula, b: &mut Binding) -> bool {
    match item {
        SchemaItem::Fvar(n) => bind_formula(b, n, f),
        SchemaItem::Pattern(p) => match_pattern(p, f, b),
        SchemaItem::Ctx(_) => unreachable!("context items are matched as lists"),
    }
}

fn bind_context(b: &mut Binding, name: &str, fs: &[Formula]) -> bool {
    match b.contexts.get(name) {
        Some(existing) => existing.as_slice() == fs,
        None => {
            b.contexts.insert(name.to_string(), fs.to_vec());
            true
        }
    }
}

fn match_side_ordered(items: &[SchemaItem], fs: &[Formula], b: Binding, out: &mut Vec<Binding>) {
    let Some((first, rest)) = items.split_first() else {
        if fs.is_empty() {
            out.push(b);
        }
        return;
    };
    match first {
        SchemaItem::Ctx(name) => {
            if let Some(existing) = b.contexts.get(name) {
                let k = existing.len();
                if k <= fs.len() && existing.as_slice() == &fs[..k] {
                    match_side_ordered(rest, &fs[k..], b, out);
                }
                return;
            }
            for k in 0..=fs.len() {
                let mut next = b.clone();
                bind_context(&mut next, name, &fs[..k]);
                match_side_ordered(rest, &fs[k..], next, out);
            }
        }
        _ => {
            if let Some((head, tail)) = fs.split_first() {
                let mut next = b;
                if match_item(first, head, &mut next) {
                    match_side_ordered(rest, tail, next, out);
                }
            }
        }
    }
}

/// Removes one occurrence of each formula of `sub` from `pool`.
fn remove_all(pool: &mut Vec<Formula>, sub: &[Formula]) -> bool {
    for f in sub {
        match pool.iter().position(|g| g == f) {
            Some(i) => {
                pool.remove(i);
            }
            None => return false,
        }
    }
    true
}

fn match_side_multiset(items: &[SchemaItem], fs: &[Formula], b: Binding, out: &mut Vec<Binding>) {
    let formula_items: Vec<&SchemaItem> = items.iter().filter(|i| !i.is_ctx()).collect();
    let ctx_names: Vec<&str> = items
        .iter()
        .filter_map(|i| match i {
            SchemaItem::Ctx(n) => Some(n.as_str()),
            _ => None,
        })
        .collect();
    let mut used = vec![false; fs.len()];
    assign_formula_items(&formula_items, fs, &mut used, b, &mut |b, used| {
        let remaining: Vec<Formula> = fs.iter().zip(used).filter(|(_, u)| !**u).map(|(f, _)| f.clone()).collect();
        distribute(&ctx_names, remaining, b, out);
    });
}

fn assign_formula_items(
    items: &[&SchemaItem],
    fs: &[Formula],
    used: &mut Vec<bool>,
    b: Binding,
    k: &mut dyn FnMut(Binding, &[bool]),
) {
    let Some((first, rest)) = items.split_first() else {
        k(b, used);
        return;
    };
    for i in 0..fs.len() {
        if used[i] {
            continue;
        }
        let mut next = b.clone();
        if match_item(first, &fs[i], &mut next) {
            used[i] = true;
            assign_formula_items(rest, fs, used, next, k);
            used[i] = false;
        }
    }
}

/// Spreads `remaining` over the context occurrences `names`; already bound
/// contexts consume their contents first.
fn distribute(names: &[&str], mut remaining: Vec<Formula>, b: Binding, out: &mut Vec<Binding>) {
    let mut free: Vec<&str> = Vec::new();
    for n in names {
        match b.contexts.get(*n) {
            Some(existing) => {
                if !remove_all(&mut remaining, existing) {
                    return;
                }
            }
            None => free.push(n),
        }
    }
    if free.is_empty() {
        if remaining.is_empty() {
            out.push(b);
        }
        return;
    }
    let slots = free.len();
    let mut choice = vec![0usize; remaining.len()];
    loop {
        let mut lists: Vec<Vec<Formula>> = vec![Vec::new(); slots];
        for (f, &c) in remaining.iter().zip(&choice) {
            lists[c].push(f.clone());
        }
        let mut next = b.clone();
        let mut ok = true;
        for (name, list) in free.iter().zip(&lists) {
            match next.contexts.get(*name) {
                // Repeated occurrence of one context variable on this side.
                Some(existing) => {
                    let mut x = existing.clone();
                    let mut y = list.clone();
                    x.sort();
                    y.sort();
                    ok &= x == y;
                }
                None => {
                    next.contexts.insert(name.to_string(), list.clone());
                }
            }
        }
        if ok {
            out.push(next);
        }
        // Odometer increment over slot choices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return;
            }
            choice[i] += 1;
            if choice[i] < slots {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn match_sequent(schema: &SchematicSequent, goal: &Sequent, mode: MatchMode, b: Binding) -> Vec<Binding> {
    let side = |items: &[SchemaItem], fs: &[Formula], b: Binding, out: &mut Vec<Binding>| match mode {
        MatchMode::Ordered => match_side_ordered(items, fs, b, out),
        MatchMode::Multiset => match_side_multiset(items, fs, b, out),
    };
    let mut partial = Vec::new();
    side(&schema.antecedent, &goal.antecedent, b, &mut partial);
    let mut out = Vec::new();
    for b in partial {
        side(&schema.succedent, &goal.succedent, b, &mut out);
    }
    out
}

/// Width of one side of an instance, if every context on it is bound.
fn instance_width(items: &[SchemaItem], b: &Binding) -> Option<usize> {
    items.iter().try_fold(0, |acc, item| match item {
        SchemaItem::Ctx(n) => b.contexts.get(n).map(|c| acc + c.len()),
        _ => Some(acc + 1),
    })
}

fn respects_bounds(s: &SchematicSequent, b: &Binding, bounds: Bounds) -> bool {
    match (instance_width(&s.antecedent, b), instance_width(&s.succedent, b)) {
        (Some(a), Some(c)) => bounds.admits_widths(a, c),
        _ => true,
    }
}

/// All bindings under which `rule.conclusion` instantiates to `goal`,
/// enumerating every split of the contexts. Bindings whose induced
/// premises break `bounds` are dropped. Metavariables that occur only in
/// premises stay unbound.
pub fn match_conclusion(rule: &RuleSchema, goal: &Sequent, bounds: Bounds, mode: MatchMode) -> Vec<Binding> {
    if !bounds.admits(goal) {
        return Vec::new();
    }
    let mut out = match_sequent(&rule.conclusion, goal, mode, Binding::default());
    out.retain(|b| rule.premises.iter().all(|p| respects_bounds(p, b, bounds)));
    out.sort();
    out.dedup();
    out
}

/// A rule instance: concrete premises and conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
}

pub(crate) fn instantiate_pattern(rule: &str, p: &Pattern, b: &Binding) -> Result<Formula, CalculusError> {
    let missing = |name: &str| CalculusError::IncompleteBinding { rule: rule.to_string(), name: name.to_string() };
    let var_of = |marker: &str| match b.terms.get(marker) {
        Some(Term::Var(v)) => Ok(v.clone()),
        Some(Term::Const(_)) => Err(CalculusError::NotAVariable { rule: rule.to_string(), name: marker.to_string() }),
        None => Err(missing(marker)),
    };
    let rec = |p: &Pattern| instantiate_pattern(rule, p, b);
    Ok(match p {
        Pattern::Meta { name } => b.formulas.get(name).cloned().ok_or_else(|| missing(name))?,
        Pattern::Not { arg } => Formula::not(rec(arg)?),
        Pattern::And { lhs, rhs } => Formula::and(rec(lhs)?, rec(rhs)?),
        Pattern::Or { lhs, rhs } => Formula::or(rec(lhs)?, rec(rhs)?),
        Pattern::Imp { lhs, rhs } => Formula::imp(rec(lhs)?, rec(rhs)?),
        Pattern::Forall { var, body } => Formula::Forall(var_of(var)?, Arc::new(rec(body)?)),
        Pattern::Exists { var, body } => Formula::Exists(var_of(var)?, Arc::new(rec(body)?)),
        Pattern::Subst { body, var, term } => {
            let f = b.formulas.get(body).ok_or_else(|| missing(body))?;
            let t = b.terms.get(term).ok_or_else(|| missing(term))?;
            f.substitute(&var_of(var)?, t)
        }
    })
}

fn instantiate_side(rule: &str, items: &[SchemaItem], b: &Binding) -> Result<Vec<Formula>, CalculusError> {
    let mut out = Vec::new();
    for item in items {
        match item {
            SchemaItem::Ctx(n) => out.extend(
                b.contexts
                    .get(n)
                    .ok_or_else(|| CalculusError::IncompleteBinding { rule: rule.to_string(), name: n.clone() })?
                    .iter()
                    .cloned(),
            ),
            SchemaItem::Fvar(n) => out.push(
                b.formulas
                    .get(n)
                    .cloned()
                    .ok_or_else(|| CalculusError::IncompleteBinding { rule: rule.to_string(), name: n.clone() })?,
            ),
            SchemaItem::Pattern(p) => out.push(instantiate_pattern(rule, p, b)?),
        }
    }
    Ok(out)
}

pub(crate) fn instantiate_schematic(rule: &str, s: &SchematicSequent, b: &Binding) -> Result<Sequent, CalculusError> {
    Ok(Sequent {
        antecedent: instantiate_side(rule, &s.antecedent, b)?,
        succedent: instantiate_side(rule, &s.succedent, b)?,
    })
}

/// Replaces every metavariable of `rule` according to `b`. Side
/// conditions are not checked here.
pub fn instantiate(rule: &RuleSchema, b: &Binding) -> Result<Instance, CalculusError> {
    let premises =
        rule.premises.iter().map(|p| instantiate_schematic(&rule.name, p, b)).collect::<Result<Vec<_>, _>>()?;
    let conclusion = instantiate_schematic(&rule.name, &rule.conclusion, b)?;
    Ok(Instance { premises, conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{builtin_calculus, BuiltinId};
    use crate::formula::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn seq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    #[test]
    fn and_right_single_binding() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let bs = match_conclusion(lk.rule("∧R").unwrap(), &seq("|- p & q"), lk.bounds(), MatchMode::Multiset);
        let expected = Binding::default()
            .with_context("Γ", vec![])
            .with_context("Θ", vec![])
            .with_formula("A", f("p"))
            .with_formula("B", f("q"));
        assert_eq!(bs, vec![expected]);
    }

    #[test]
    fn thinning_left_on_single_formula() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let r = lk.rule("thin-L").unwrap();
        let bs = match_conclusion(r, &seq("p |-"), lk.bounds(), MatchMode::Multiset);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].contexts["Γ"], vec![]);
        let inst = instantiate(r, &bs[0]).unwrap();
        assert_eq!(inst.premises, vec![seq("|-")]);
    }

    #[test]
    fn implication_left_enumerates_splits() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let r = lk.rule("⊃L").unwrap();
        let goal = seq("p -> q, p |- q");
        for mode in [MatchMode::Multiset, MatchMode::Ordered] {
            let bs = match_conclusion(r, &goal, lk.bounds(), mode);
            assert_eq!(bs.len(), 4, "{mode:?}");
            for b in &bs {
                assert_eq!(instantiate(r, b).unwrap().conclusion, goal);
            }
        }
        // In LJ the left premise must have an empty Θ.
        let lj = builtin_calculus(BuiltinId::Lj);
        let bs = match_conclusion(lj.rule("⊃L").unwrap(), &goal, lj.bounds(), MatchMode::Multiset);
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.contexts["Θ"].is_empty()));
    }

    #[test]
    fn ordered_mode_needs_position() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let r = lk.rule("¬L").unwrap();
        assert!(match_conclusion(r, &seq("p, ~q |-"), lk.bounds(), MatchMode::Ordered).is_empty());
        assert_eq!(match_conclusion(r, &seq("p, ~q |-"), lk.bounds(), MatchMode::Multiset).len(), 1);
    }

    #[test]
    fn axiom_instance() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let b = Binding::default().with_formula("A", f("p | q"));
        let inst = instantiate(lk.rule("ax").unwrap(), &b).unwrap();
        assert!(inst.premises.is_empty());
        assert_eq!(inst.conclusion, seq("p | q |- p | q"));
    }

    #[test]
    fn forall_left_substitutes_term() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let b = Binding::default()
            .with_formula("A", f("P(x)"))
            .with_term("x", Term::Var("x".into()))
            .with_term("t", Term::Const("c".into()))
            .with_context("Γ", vec![f("q")])
            .with_context("Θ", vec![]);
        let inst = instantiate(lk.rule("∀L").unwrap(), &b).unwrap();
        assert_eq!(inst.premises, vec![seq("P(c), q |-")]);
        assert_eq!(inst.conclusion, seq("forall x. P(x), q |-"));
    }

    #[test]
    fn negation_right_instance() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let b = Binding::default().with_context("Γ", vec![f("q")]).with_context("Θ", vec![]).with_formula("A", f("p"));
        let inst = instantiate(lk.rule("¬R").unwrap(), &b).unwrap();
        assert_eq!(inst.premises, vec![seq("p, q |-")]);
        assert_eq!(inst.conclusion, seq("q |- ~p"));
    }

    #[test]
    fn incomplete_binding_is_an_error() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let err = instantiate(lk.rule("ax").unwrap(), &Binding::default()).unwrap_err();
        assert!(matches!(err, CalculusError::IncompleteBinding { ref name, .. } if name == "A"));
    }

    #[test]
    fn quantifier_conclusion_binds_variable_marker() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let bs = match_conclusion(lk.rule("∀R").unwrap(), &seq("|- forall y. P(y)"), lk.bounds(), MatchMode::Multiset);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].terms["x"], Term::Var("y".into()));
        assert_eq!(bs[0].formulas["A"], f("P(y)"));
    }
}
