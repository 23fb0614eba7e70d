use std::fmt;

use super::ProofTree;
use crate::calculus::{instantiate, Calculus, CalculusError, MatchMode, RuleSchema, Sequent, SideCondition};
use crate::stahlize::dual_name;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    UnknownRule(String),
    Instantiation(CalculusError),
    ConclusionMismatch {
        expected: Sequent,
    },
    PremiseCount {
        expected: usize,
        found: usize,
    },
    PremiseMismatch {
        index: usize,
        expected: Sequent,
    },
    Bounds,
    /// The eigenvariable of the inference occurs free in its conclusion.
    Eigenvariable {
        marker: String,
        name: String,
    },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::UnknownRule(r) => write!(f, "no rule named `{r}` in the calculus"),
            FailureReason::Instantiation(e) => write!(f, "{e}"),
            FailureReason::ConclusionMismatch { expected } => {
                write!(f, "rule instance concludes `{expected}`, not the node's sequent")
            }
            FailureReason::PremiseCount { expected, found } => {
                write!(f, "rule has {expected} premises but the node has {found} children")
            }
            FailureReason::PremiseMismatch { index, expected } => {
                write!(f, "premise {index} should be `{expected}`")
            }
            FailureReason::Bounds => write!(f, "sequent exceeds the calculus width bounds"),
            FailureReason::Eigenvariable { marker, name } => {
                write!(f, "eigenvariable violation: `{name}` (marker {marker}) occurs free in the conclusion")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    /// Child indices from the root to the failing node.
    pub path: Vec<usize>,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub failure: Option<CheckFailure>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("valid"),
            Some(CheckFailure { path, reason }) => {
                let path: Vec<String> = path.iter().map(usize::to_string).collect();
                write!(f, "invalid at node [{}]: {reason}", path.join("."))
            }
        }
    }
}

fn same(a: &Sequent, b: &Sequent, mode: MatchMode) -> bool {
    match mode {
        MatchMode::Ordered => a == b,
        MatchMode::Multiset => a.multiset_eq(b),
    }
}

/// Checks `p` against `c`, comparing sides as multisets (interchange is
/// implicit). Cut is accepted.
pub fn check_proof(c: &Calculus, p: &ProofTree) -> Verdict {
    check_proof_with(c, p, MatchMode::Multiset)
}

pub fn check_proof_with(c: &Calculus, p: &ProofTree, mode: MatchMode) -> Verdict {
    let mut path = Vec::new();
    Verdict { failure: check_node(c, p, mode, &mut path).err().map(|reason| CheckFailure { path, reason }) }
}

/// Exact name first, then the name with the dual mark toggled, so a proof
/// labelled in one calculus can be read against its dual's schemas.
fn lookup_rule<'a>(c: &'a Calculus, name: &str) -> Option<&'a RuleSchema> {
    c.rule(name).or_else(|| c.rule(&dual_name(name)))
}

/// Pre-order: a node is judged before its children. On failure `path`
/// is left pointing at the offending node.
fn check_node(c: &Calculus, p: &ProofTree, mode: MatchMode, path: &mut Vec<usize>) -> Result<(), FailureReason> {
    let rule = lookup_rule(c, &p.rule).ok_or_else(|| FailureReason::UnknownRule(p.rule.clone()))?;
    if !c.bounds().admits(&p.sequent) {
        return Err(FailureReason::Bounds);
    }
    let inst = instantiate(rule, &p.binding).map_err(FailureReason::Instantiation)?;
    if !same(&inst.conclusion, &p.sequent, mode) {
        return Err(FailureReason::ConclusionMismatch { expected: inst.conclusion });
    }
    if inst.premises.len() != p.children.len() {
        return Err(FailureReason::PremiseCount { expected: inst.premises.len(), found: p.children.len() });
    }
    for (index, (expected, child)) in inst.premises.iter().zip(&p.children).enumerate() {
        if !same(expected, &child.sequent, mode) {
            return Err(FailureReason::PremiseMismatch { index, expected: expected.clone() });
        }
    }
    for cond in &rule.side_conditions {
        if let SideCondition::EigenvariableFresh(marker) = cond {
            let term = p.binding.terms.get(marker).ok_or_else(|| {
                FailureReason::Instantiation(CalculusError::IncompleteBinding {
                    rule: rule.name.clone(),
                    name: marker.clone(),
                })
            })?;
            if p.sequent.formulas().any(|f| f.mentions_free(term.name())) {
                return Err(FailureReason::Eigenvariable { marker: marker.clone(), name: term.name().to_string() });
            }
        }
    }
    for (i, child) in p.children.iter().enumerate() {
        path.push(i);
        check_node(c, child, mode, path)?;
        path.pop();
    }
    Ok(())
}
