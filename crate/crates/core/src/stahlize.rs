//! Arrow reversal: mirror sequents, dualize calculi, transport proofs.
//!
//! Dualizing a calculus swaps antecedent and succedent in every sequent of
//! every rule, including axioms, and swaps the two width bounds. Names get
//! a `°` suffix, which a second application strips again, so the operation
//! is an involution on the data as a whole.

use crate::calculus::{Calculus, RuleSchema, SchematicSequent, Sequent};
use crate::engine::ProofTree;

pub const DUAL_MARK: char = '°';

pub fn mirror_sequent(s: &Sequent) -> Sequent {
    s.mirror()
}

pub fn mirror_schematic(s: &SchematicSequent) -> SchematicSequent {
    SchematicSequent { antecedent: s.succedent.clone(), succedent: s.antecedent.clone() }
}

/// `name°`, or `name` if it already carries the mark.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix(DUAL_MARK) {
        Some(base) => base.to_string(),
        None => format!("{name}{DUAL_MARK}"),
    }
}

pub fn stahlize_rule(r: &RuleSchema) -> RuleSchema {
    RuleSchema {
        name: dual_name(&r.name),
        premises: r.premises.iter().map(mirror_schematic).collect(),
        conclusion: mirror_schematic(&r.conclusion),
        side_conditions: r.side_conditions.clone(),
        checker_only: r.checker_only,
    }
}

pub fn stahlize_calculus(c: &Calculus) -> Calculus {
    Calculus {
        name: dual_name(&c.name),
        rules: c.rules.iter().map(stahlize_rule).collect(),
        antecedent_bound: c.succedent_bound,
        succedent_bound: c.antecedent_bound,
    }
}

/// Mirrors every sequent and renames every rule. Metavariables keep their
/// names under dualization, so bindings carry over unchanged.
pub fn mirror_proof(p: &ProofTree) -> ProofTree {
    ProofTree {
        sequent: p.sequent.mirror(),
        rule: dual_name(&p.rule),
        binding: p.binding.clone(),
        children: p.children.iter().map(mirror_proof).collect(),
    }
}
