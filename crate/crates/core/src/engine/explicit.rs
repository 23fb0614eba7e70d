//! Plain backward search over lists or multisets, with every structural
//! rule an ordinary backward step and contraction rationed per branch.

use std::collections::HashSet;

use super::structural::StructuralKit;
use super::{EngineError, ProofTree, SearchResult};
use crate::calculus::{instantiate, match_conclusion, Binding, Calculus, MatchMode, Sequent};

struct Explicit<'a> {
    calculus: &'a Calculus,
    kit: StructuralKit,
    mode: MatchMode,
    depth_bound: usize,
    contraction_budget: usize,
    path: HashSet<Sequent>,
    bound_hit: bool,
}

pub(super) fn search(
    c: &Calculus,
    goal: &Sequent,
    depth_bound: usize,
    multiset: bool,
    contraction_budget: usize,
) -> Result<SearchResult, EngineError> {
    let mut s = Explicit {
        calculus: c,
        kit: StructuralKit::of(c),
        mode: if multiset { MatchMode::Multiset } else { MatchMode::Ordered },
        depth_bound,
        contraction_budget,
        path: HashSet::new(),
        bound_hit: false,
    };
    if !c.bounds().admits(goal) {
        return Ok(SearchResult::Refuted);
    }
    match s.prove(goal, 1, 0)? {
        Some(tree) => Ok(SearchResult::Proved(tree)),
        None if s.bound_hit => Ok(SearchResult::Unknown { depth_bound }),
        None => Ok(SearchResult::Refuted),
    }
}

impl Explicit<'_> {
    fn key(&self, s: &Sequent) -> Sequent {
        match self.mode {
            MatchMode::Ordered => s.clone(),
            MatchMode::Multiset => {
                let mut k = s.clone();
                k.antecedent.sort();
                k.succedent.sort();
                k
            }
        }
    }

    /// Closes `goal` with an axiom plus thinning when some formula occurs
    /// on both sides.
    fn axiom_with_weakening(&self, goal: &Sequent) -> Result<Option<ProofTree>, EngineError> {
        if self.mode != MatchMode::Multiset {
            return Ok(None);
        }
        let bounds = self.calculus.bounds();
        for f in &goal.antecedent {
            if !goal.succedent.contains(f) {
                continue;
            }
            let core = Sequent::new(vec![f.clone()], vec![f.clone()]);
            for r in self.calculus.rules.iter().filter(|r| r.is_axiom() && !r.checker_only) {
                if let Some(b) = match_conclusion(r, &core, bounds, MatchMode::Multiset).into_iter().next() {
                    let leaf = ProofTree { sequent: core.clone(), rule: r.name.clone(), binding: b, children: vec![] };
                    return self.kit.thin_to(self.calculus, goal, leaf).map(Some);
                }
            }
        }
        Ok(None)
    }

    fn prove(&mut self, goal: &Sequent, depth: usize, contractions: usize) -> Result<Option<ProofTree>, EngineError> {
        if let Some(tree) = self.axiom_with_weakening(goal)? {
            return Ok(Some(tree));
        }
        if depth > self.depth_bound {
            self.bound_hit = true;
            return Ok(None);
        }
        let key = self.key(goal);
        if !self.path.insert(key.clone()) {
            return Ok(None);
        }
        let result = self.expand(goal, &key, depth, contractions);
        self.path.remove(&key);
        result
    }

    fn expand(
        &mut self,
        goal: &Sequent,
        key: &Sequent,
        depth: usize,
        contractions: usize,
    ) -> Result<Option<ProofTree>, EngineError> {
        let bounds = self.calculus.bounds();
        for (index, rule) in self.calculus.rules.iter().enumerate() {
            if rule.checker_only {
                continue;
            }
            let contraction = self.kit.is_contraction(index);
            let bindings: Vec<Binding> = match_conclusion(rule, goal, bounds, self.mode);
            if contraction && contractions >= self.contraction_budget && !bindings.is_empty() {
                self.bound_hit = true;
                continue;
            }
            'bindings: for b in bindings {
                let Ok(inst) = instantiate(rule, &b) else { continue };
                if inst.premises.iter().any(|p| self.key(p) == *key) {
                    continue;
                }
                let mut children = Vec::new();
                for p in &inst.premises {
                    match self.prove(p, depth + 1, contractions + usize::from(contraction))? {
                        Some(t) => children.push(t),
                        None => continue 'bindings,
                    }
                }
                return Ok(Some(ProofTree { sequent: goal.clone(), rule: rule.name.clone(), binding: b, children }));
            }
        }
        Ok(None)
    }
}
