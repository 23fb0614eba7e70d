//! Set-based backward search.
//!
//! Each side of a goal is a set. A rule applies when its conclusion, read
//! as a pair of sets, is included in the goal; the surplus is thinned away
//! and duplicates contracted when the proof tree is rebuilt. A context on
//! an unbounded side takes the whole side, principal formulas included;
//! on a bounded side every short enough sublist is tried. Three prunings
//! keep the space finite:
//!
//! - a candidate with a premise included in the goal is dropped (anything
//!   provable from it is provable from the goal directly),
//! - among candidates of one rule, only those whose premises are not
//!   strictly included in another candidate's premises survive,
//! - a premise equal to a sequent on the ancestor path fails.
//!
//! Proved sequents are cached with their plan. A failure is cached only
//! when it did not depend on the depth bound or on a loop back to a
//! sequent above the failing node.

use std::collections::{HashMap, HashSet};

use super::explicit;
use super::structural::StructuralKit;
use super::{ContractionPolicy, EngineError, ProofTree, SearchConfig, SearchResult};
use crate::calculus::{
    instantiate, instantiate_schematic, match_pattern, Binding, Bounds, Calculus, Pattern, RuleSchema, SchemaItem,
    Sequent, Side,
};
use crate::formula::Formula;

/// A goal with each side sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SetSequent {
    ant: Vec<Formula>,
    suc: Vec<Formula>,
}

impl SetSequent {
    pub(crate) fn of(s: &Sequent) -> SetSequent {
        let norm = |v: &[Formula]| {
            let mut v = v.to_vec();
            v.sort();
            v.dedup();
            v
        };
        SetSequent { ant: norm(&s.antecedent), suc: norm(&s.succedent) }
    }

    fn side(&self, side: Side) -> &[Formula] {
        match side {
            Side::Antecedent => &self.ant,
            Side::Succedent => &self.suc,
        }
    }

    fn included_in(&self, other: &SetSequent) -> bool {
        is_subset(&self.ant, &other.ant) && is_subset(&self.suc, &other.suc)
    }
}

/// Both slices sorted.
fn is_subset(a: &[Formula], b: &[Formula]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

fn preflight(c: &Calculus, cfg: &SearchConfig) -> Result<(), EngineError> {
    if cfg.depth_bound == 0 {
        return Err(EngineError::InvalidConfig("depth bound must be at least 1".into()));
    }
    if cfg.contraction_policy == ContractionPolicy::ImplicitSet && !cfg.multiset_mode {
        return Err(EngineError::InvalidConfig("implicit-set contraction needs multiset mode".into()));
    }
    for r in c.rules.iter().filter(|r| !r.checker_only) {
        let names = r.uninferable();
        if !names.is_empty() {
            return Err(EngineError::Uninferable { rule: r.name.clone(), names });
        }
    }
    Ok(())
}

/// Backward proof search for a propositional goal. Cut is never tried.
pub fn search(c: &Calculus, goal: &Sequent, cfg: &SearchConfig) -> Result<SearchResult, EngineError> {
    Prover::new(c, cfg)?.search(goal)
}

/// A calculus prepared once for many searches under one configuration.
/// Each call starts from empty caches, so results do not depend on what
/// was searched before.
pub struct Prover<'a> {
    calculus: &'a Calculus,
    config: SearchConfig,
    set: Option<SetSearch<'a>>,
}

impl<'a> Prover<'a> {
    pub fn new(c: &'a Calculus, cfg: &SearchConfig) -> Result<Prover<'a>, EngineError> {
        preflight(c, cfg)?;
        let set = match cfg.contraction_policy {
            ContractionPolicy::ImplicitSet => Some(SetSearch::new(c, cfg.depth_bound)?),
            ContractionPolicy::ExplicitBounded(_) => None,
        };
        Ok(Prover { calculus: c, config: *cfg, set })
    }

    pub fn calculus(&self) -> &'a Calculus {
        self.calculus
    }

    pub fn search(&mut self, goal: &Sequent) -> Result<SearchResult, EngineError> {
        if !goal.is_propositional() {
            return Err(EngineError::NotPropositional(goal.to_string()));
        }
        match (&mut self.set, self.config.contraction_policy) {
            (Some(set), _) => set.run(goal),
            (None, ContractionPolicy::ExplicitBounded(k)) => {
                explicit::search(self.calculus, goal, self.config.depth_bound, self.config.multiset_mode, k)
            }
            (None, ContractionPolicy::ImplicitSet) => unreachable!("prepared in Prover::new"),
        }
    }
}

/// Which context variables of a rule fall under a side bound.
struct PreparedRule<'a> {
    index: usize,
    rule: &'a RuleSchema,
    ctx_limit: HashMap<String, Option<usize>>,
}

impl<'a> PreparedRule<'a> {
    fn new(index: usize, rule: &'a RuleSchema, bounds: Bounds) -> Result<PreparedRule<'a>, EngineError> {
        let mut seen = HashSet::new();
        for item in rule.conclusion.items() {
            if let SchemaItem::Ctx(n) = item {
                if !seen.insert(n.clone()) {
                    return Err(EngineError::UnsupportedRule(rule.name.clone()));
                }
            }
        }
        let mut ctx_limit: HashMap<String, Option<usize>> = HashMap::new();
        for s in rule.premises.iter().chain(std::iter::once(&rule.conclusion)) {
            for side in [Side::Antecedent, Side::Succedent] {
                for item in s.side(side) {
                    if let SchemaItem::Ctx(n) = item {
                        let limit = ctx_limit.entry(n.clone()).or_insert(None);
                        if let Some(b) = bounds.get(side) {
                            *limit = Some(limit.map_or(b, |l| l.min(b)));
                        }
                    }
                }
            }
        }
        Ok(PreparedRule { index, rule, ctx_limit })
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    rule: usize,
    binding: Binding,
    premises: Vec<SetSequent>,
}

#[derive(Clone, Debug)]
struct Plan {
    rule: usize,
    binding: Binding,
}

enum Outcome {
    Proved,
    /// `loop_depth` is the shallowest ancestor a pruned loop pointed at.
    Failed {
        loop_depth: usize,
        bound_hit: bool,
    },
}

struct SetSearch<'a> {
    calculus: &'a Calculus,
    rules: Vec<PreparedRule<'a>>,
    bounds: Bounds,
    depth_bound: usize,
    kit: StructuralKit,
    proved: HashMap<SetSequent, Plan>,
    refuted: HashSet<SetSequent>,
    path: HashMap<SetSequent, usize>,
}

impl<'a> SetSearch<'a> {
    fn new(calculus: &'a Calculus, depth_bound: usize) -> Result<SetSearch<'a>, EngineError> {
        let bounds = calculus.bounds();
        let mut rules = Vec::new();
        // Axioms first so closed branches end early.
        for axioms_pass in [true, false] {
            for (i, r) in calculus.rules.iter().enumerate() {
                if !r.checker_only && r.is_axiom() == axioms_pass && !set_redundant(r) {
                    rules.push(PreparedRule::new(i, r, bounds)?);
                }
            }
        }
        Ok(SetSearch {
            calculus,
            rules,
            bounds,
            depth_bound,
            kit: StructuralKit::of(calculus),
            proved: HashMap::new(),
            refuted: HashSet::new(),
            path: HashMap::new(),
        })
    }

    fn run(&mut self, goal: &Sequent) -> Result<SearchResult, EngineError> {
        self.proved.clear();
        self.refuted.clear();
        self.path.clear();
        if !self.bounds.admits(goal) {
            return Ok(SearchResult::Refuted);
        }
        let key = SetSequent::of(goal);
        match self.prove(&key, 1) {
            Outcome::Proved => Ok(SearchResult::Proved(self.build(goal)?)),
            Outcome::Failed { bound_hit: true, .. } => Ok(SearchResult::Unknown { depth_bound: self.depth_bound }),
            Outcome::Failed { .. } => Ok(SearchResult::Refuted),
        }
    }

    fn prove(&mut self, key: &SetSequent, depth: usize) -> Outcome {
        if self.proved.contains_key(key) {
            return Outcome::Proved;
        }
        if self.refuted.contains(key) {
            return Outcome::Failed { loop_depth: usize::MAX, bound_hit: false };
        }
        if let Some(&d) = self.path.get(key) {
            return Outcome::Failed { loop_depth: d, bound_hit: false };
        }
        if depth > self.depth_bound {
            return Outcome::Failed { loop_depth: usize::MAX, bound_hit: true };
        }
        self.path.insert(key.clone(), depth);
        let mut loop_depth = usize::MAX;
        let mut bound_hit = false;
        for cand in self.candidates(key) {
            let mut closed = true;
            for premise in &cand.premises {
                match self.prove(premise, depth + 1) {
                    Outcome::Proved => {}
                    Outcome::Failed { loop_depth: l, bound_hit: b } => {
                        loop_depth = loop_depth.min(l);
                        bound_hit |= b;
                        closed = false;
                        break;
                    }
                }
            }
            if closed {
                self.path.remove(key);
                self.proved.insert(key.clone(), Plan { rule: cand.rule, binding: cand.binding });
                return Outcome::Proved;
            }
        }
        self.path.remove(key);
        if !bound_hit && loop_depth >= depth {
            self.refuted.insert(key.clone());
        }
        Outcome::Failed { loop_depth, bound_hit }
    }

    fn candidates(&self, goal: &SetSequent) -> Vec<Candidate> {
        let mut out = Vec::new();
        for prepared in &self.rules {
            let start = out.len();
            self.rule_candidates(prepared, goal, &mut out);
            prune_dominated(&mut out, start);
        }
        out
    }

    fn rule_candidates(&self, prepared: &PreparedRule<'_>, goal: &SetSequent, out: &mut Vec<Candidate>) {
        let rule = prepared.rule;
        let items = |side| rule.conclusion.side(side).iter().filter(|i| !i.is_ctx()).collect::<Vec<_>>();
        let (ant_items, suc_items) = (items(Side::Antecedent), items(Side::Succedent));
        let mut principal = Vec::new();
        assign(&ant_items, &goal.ant, &mut vec![false; goal.ant.len()], Binding::default(), &mut |b| {
            assign(&suc_items, &goal.suc, &mut vec![false; goal.suc.len()], b, &mut |b| principal.push(b));
        });
        for b in principal {
            let mut options: Vec<(String, Vec<Vec<Formula>>)> = Vec::new();
            for side in [Side::Antecedent, Side::Succedent] {
                for item in rule.conclusion.side(side) {
                    if let SchemaItem::Ctx(n) = item {
                        let values = match prepared.ctx_limit[n] {
                            Some(k) => small_sublists(goal.side(side), k),
                            None => vec![goal.side(side).to_vec()],
                        };
                        options.push((n.clone(), values));
                    }
                }
            }
            let mut choice = vec![0usize; options.len()];
            loop {
                let mut binding = b.clone();
                for ((name, values), &c) in options.iter().zip(&choice) {
                    binding.contexts.insert(name.clone(), values[c].clone());
                }
                if let Some(cand) = self.admit(prepared, goal, binding) {
                    out.push(cand);
                }
                // Odometer over context choices; an empty rule has one combination.
                let mut i = 0;
                loop {
                    if i == choice.len() {
                        break;
                    }
                    choice[i] += 1;
                    if choice[i] < options[i].1.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
    }

    fn admit(&self, prepared: &PreparedRule<'_>, goal: &SetSequent, binding: Binding) -> Option<Candidate> {
        let rule = prepared.rule;
        let width = |side: Side| {
            rule.conclusion
                .side(side)
                .iter()
                .map(|i| if let SchemaItem::Ctx(n) = i { binding.contexts[n].len() } else { 1 })
                .sum()
        };
        if !self.bounds.admits_widths(width(Side::Antecedent), width(Side::Succedent)) {
            return None;
        }
        let mut premises = Vec::with_capacity(rule.premises.len());
        for p in &rule.premises {
            let inst = instantiate_schematic(&rule.name, p, &binding).ok()?;
            if !self.bounds.admits(&inst) {
                return None;
            }
            premises.push(SetSequent::of(&inst));
        }
        if premises.iter().any(|p| p.included_in(goal)) {
            return None;
        }
        Some(Candidate { rule: prepared.index, binding, premises })
    }

    /// Rebuilds a concrete tree for `x` from the cached plans.
    fn build(&self, x: &Sequent) -> Result<ProofTree, EngineError> {
        let plan = &self.proved[&SetSequent::of(x)];
        let rule = &self.calculus.rules[plan.rule];
        let inst = instantiate(rule, &plan.binding).expect("plans instantiate");
        let children = inst.premises.iter().map(|p| self.build(p)).collect::<Result<Vec<_>, _>>()?;
        let node = ProofTree {
            sequent: inst.conclusion.clone(),
            rule: rule.name.clone(),
            binding: plan.binding.clone(),
            children,
        };
        let mut dedup: Vec<Formula> = Vec::new();
        let mut set_form = Sequent::default();
        for side in [Side::Antecedent, Side::Succedent] {
            dedup.clear();
            for f in inst.conclusion.side(side) {
                if !dedup.contains(f) {
                    dedup.push(f.clone());
                }
            }
            *set_form.side_mut(side) = dedup.clone();
        }
        let contracted = self.kit.contract_to(self.calculus, &set_form, node)?;
        let mut tree = self.kit.thin_to(self.calculus, x, contracted)?;
        // Same multiset; keep the caller's order.
        debug_assert!(tree.sequent.multiset_eq(x));
        tree.sequent = x.clone();
        Ok(tree)
    }
}

/// Every premise's items occur in the conclusion on the same side, so each
/// instance has a premise included in the goal and is pruned anyway. This
/// covers thinning, contraction and interchange.
fn set_redundant(r: &RuleSchema) -> bool {
    !r.premises.is_empty()
        && r.premises.iter().all(|p| {
            [Side::Antecedent, Side::Succedent]
                .into_iter()
                .all(|side| p.side(side).iter().all(|i| r.conclusion.side(side).contains(i)))
        })
}

/// Drops candidates from `start` on whose premises are pointwise included
/// in another candidate's premises (the first of equal ones stays).
fn prune_dominated(out: &mut Vec<Candidate>, start: usize) {
    let group: Vec<Candidate> = out.drain(start..).collect();
    let dominated = |i: usize| {
        group.iter().enumerate().any(|(j, other)| {
            if i == j {
                return false;
            }
            let covers = group[i].premises.iter().zip(&other.premises).all(|(a, b)| a.included_in(b));
            let equal = group[i].premises == other.premises;
            covers && (!equal || j < i)
        })
    };
    let keep: Vec<bool> = (0..group.len()).map(|i| !dominated(i)).collect();
    out.extend(group.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c));
}

/// Injective assignment of the non-context items to goal formulas.
fn assign(items: &[&SchemaItem], fs: &[Formula], used: &mut Vec<bool>, b: Binding, k: &mut dyn FnMut(Binding)) {
    let Some((first, rest)) = items.split_first() else {
        k(b);
        return;
    };
    for i in 0..fs.len() {
        if used[i] || !head_compatible(first, &fs[i]) {
            continue;
        }
        let mut next = b.clone();
        let ok = match first {
            SchemaItem::Fvar(n) => match next.formulas.get(n) {
                Some(existing) => *existing == fs[i],
                None => {
                    next.formulas.insert(n.clone(), fs[i].clone());
                    true
                }
            },
            SchemaItem::Pattern(p) => match_pattern(p, &fs[i], &mut next),
            SchemaItem::Ctx(_) => unreachable!(),
        };
        if ok {
            used[i] = true;
            assign(rest, fs, used, next, k);
            used[i] = false;
        }
    }
}

/// Cheap rejection before a binding is cloned for a full match.
fn head_compatible(item: &SchemaItem, f: &Formula) -> bool {
    let SchemaItem::Pattern(p) = item else { return true };
    matches!(
        (p, f),
        (Pattern::Meta { .. } | Pattern::Subst { .. }, _)
            | (Pattern::Not { .. }, Formula::Not(_))
            | (Pattern::And { .. }, Formula::And(..))
            | (Pattern::Or { .. }, Formula::Or(..))
            | (Pattern::Imp { .. }, Formula::Imp(..))
            | (Pattern::Forall { .. }, Formula::Forall(..))
            | (Pattern::Exists { .. }, Formula::Exists(..))
    )
}

/// Order-preserving sublists of length at most `k`.
fn small_sublists(side: &[Formula], k: usize) -> Vec<Vec<Formula>> {
    let mut out = vec![Vec::new()];
    for f in side {
        let extended: Vec<Vec<Formula>> = out
            .iter()
            .filter(|v| v.len() < k)
            .map(|v| {
                let mut v = v.clone();
                v.push(f.clone());
                v
            })
            .collect();
        out.extend(extended);
    }
    out
}
