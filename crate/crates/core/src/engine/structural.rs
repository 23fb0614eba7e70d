//! Locating a calculus's thinning and contraction rules by shape, and
//! emitting the explicit steps that set-based search leaves implicit.

use std::collections::BTreeMap;

use super::{EngineError, ProofTree};
use crate::calculus::{instantiate, Binding, Calculus, RuleSchema, SchemaItem, Sequent, Side};
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Thinning,
    Contraction,
}

/// Indices of the structural rules, by side.
#[derive(Clone, Debug, Default)]
pub(crate) struct StructuralKit {
    thin: [Option<usize>; 2],
    contract: [Option<usize>; 2],
}

fn side_index(s: Side) -> usize {
    match s {
        Side::Antecedent => 0,
        Side::Succedent => 1,
    }
}

fn other(s: Side) -> Side {
    match s {
        Side::Antecedent => Side::Succedent,
        Side::Succedent => Side::Antecedent,
    }
}

fn sorted(items: &[SchemaItem]) -> Vec<String> {
    let mut v: Vec<String> = items.iter().map(|i| format!("{i:?}")).collect();
    v.sort();
    v
}

/// Each side holds exactly one context variable, used once, plus formula
/// variables only.
fn simple_side(items: &[SchemaItem]) -> bool {
    items.iter().filter(|i| i.is_ctx()).count() == 1
        && items.iter().all(|i| matches!(i, SchemaItem::Ctx(_) | SchemaItem::Fvar(_)))
}

fn classify(r: &RuleSchema) -> Option<(Kind, Side)> {
    if r.checker_only || r.premises.len() != 1 || !r.side_conditions.is_empty() {
        return None;
    }
    let p = &r.premises[0];
    let c = &r.conclusion;
    for side in [Side::Antecedent, Side::Succedent] {
        let (ps, cs) = (p.side(side), c.side(side));
        let (po, co) = (p.side(other(side)), c.side(other(side)));
        if ![ps, cs, po, co].iter().all(|s| simple_side(s)) || sorted(po) != sorted(co) {
            continue;
        }
        let fvars = |items: &[SchemaItem]| items.iter().filter(|i| !i.is_ctx()).count();
        let (np, nc) = (fvars(ps), fvars(cs));
        let mut extended = ps.to_vec();
        if nc == 1 && np == 0 {
            extended.extend(cs.iter().filter(|i| !i.is_ctx()).cloned());
            if sorted(&extended) == sorted(cs) {
                return Some((Kind::Thinning, side));
            }
        }
        if np == 2 && nc == 1 {
            let mut doubled = cs.to_vec();
            doubled.extend(cs.iter().filter(|i| !i.is_ctx()).cloned());
            if sorted(&doubled) == sorted(ps) {
                return Some((Kind::Contraction, side));
            }
        }
    }
    None
}

impl StructuralKit {
    pub(crate) fn of(c: &Calculus) -> StructuralKit {
        let mut kit = StructuralKit::default();
        for (i, r) in c.rules.iter().enumerate() {
            match classify(r) {
                Some((Kind::Thinning, s)) => {
                    kit.thin[side_index(s)].get_or_insert(i);
                }
                Some((Kind::Contraction, s)) => {
                    kit.contract[side_index(s)].get_or_insert(i);
                }
                None => {}
            }
        }
        kit
    }

    pub(crate) fn is_contraction(&self, rule_index: usize) -> bool {
        self.contract.contains(&Some(rule_index))
    }

    /// Binding that makes rule `index` conclude `x` with `f` as its
    /// principal formula on `side`.
    fn step(
        &self,
        c: &Calculus,
        kind: Kind,
        x: &Sequent,
        side: Side,
        f: &Formula,
    ) -> Result<(usize, Binding, Sequent), EngineError> {
        let slot = match kind {
            Kind::Thinning => self.thin[side_index(side)],
            Kind::Contraction => self.contract[side_index(side)],
        };
        let label = match kind {
            Kind::Thinning => format!("{side} thinning"),
            Kind::Contraction => format!("{side} contraction"),
        };
        let index = slot.ok_or_else(|| EngineError::MissingStructuralRule(label.clone()))?;
        let rule = &c.rules[index];
        let mut b = Binding::default();
        let mut rest = x.side(side).to_vec();
        let pos = rest.iter().position(|g| g == f).expect("principal formula present");
        rest.remove(pos);
        for item in rule.conclusion.side(side) {
            match item {
                SchemaItem::Ctx(n) => {
                    b.contexts.insert(n.clone(), rest.clone());
                }
                SchemaItem::Fvar(n) => {
                    b.formulas.insert(n.clone(), f.clone());
                }
                SchemaItem::Pattern(_) => unreachable!("structural rules carry no patterns"),
            }
        }
        for item in rule.conclusion.side(other(side)) {
            if let SchemaItem::Ctx(n) = item {
                b.contexts.insert(n.clone(), x.side(other(side)).to_vec());
            }
        }
        let inst = instantiate(rule, &b).map_err(|_| EngineError::MissingStructuralRule(label.clone()))?;
        debug_assert!(inst.conclusion.multiset_eq(x));
        let premise = inst.premises.into_iter().next().expect("one premise");
        Ok((index, b, premise))
    }

    /// Derives `x` from a proof of `inner.sequent`, where the latter is a
    /// sub-multiset of `x`, by thinning away the surplus.
    pub(crate) fn thin_to(&self, c: &Calculus, x: &Sequent, inner: ProofTree) -> Result<ProofTree, EngineError> {
        let surplus = |side: Side| -> Option<Formula> {
            let mut need: BTreeMap<&Formula, usize> = BTreeMap::new();
            for g in inner.sequent.side(side) {
                *need.entry(g).or_default() += 1;
            }
            for g in x.side(side) {
                match need.get_mut(g) {
                    Some(n) if *n > 0 => *n -= 1,
                    _ => return Some(g.clone()),
                }
            }
            None
        };
        for side in [Side::Antecedent, Side::Succedent] {
            if let Some(f) = surplus(side) {
                let (index, binding, premise) = self.step(c, Kind::Thinning, x, side, &f)?;
                let child = self.thin_to(c, &premise, inner)?;
                return Ok(ProofTree {
                    sequent: x.clone(),
                    rule: c.rules[index].name.clone(),
                    binding,
                    children: vec![child],
                });
            }
        }
        Ok(inner)
    }

    /// Derives `x` from a proof of `inner.sequent`, which has the same
    /// formulas as `x` with extra copies, by contraction.
    pub(crate) fn contract_to(&self, c: &Calculus, x: &Sequent, inner: ProofTree) -> Result<ProofTree, EngineError> {
        let missing = |side: Side| -> Option<Formula> {
            let mut have: BTreeMap<&Formula, usize> = BTreeMap::new();
            for g in x.side(side) {
                *have.entry(g).or_default() += 1;
            }
            for g in inner.sequent.side(side) {
                match have.get_mut(g) {
                    Some(n) if *n > 0 => *n -= 1,
                    _ => return Some(g.clone()),
                }
            }
            None
        };
        for side in [Side::Antecedent, Side::Succedent] {
            if let Some(f) = missing(side) {
                let (index, binding, premise) = self.step(c, Kind::Contraction, x, side, &f)?;
                let child = self.contract_to(c, &premise, inner)?;
                return Ok(ProofTree {
                    sequent: x.clone(),
                    rule: c.rules[index].name.clone(),
                    binding,
                    children: vec![child],
                });
            }
        }
        Ok(inner)
    }
}
