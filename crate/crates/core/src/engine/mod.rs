//! Backward proof search, proof checking and the negation inversion.

mod check;
mod explicit;
mod invert;
mod proof_json;
mod search;
mod structural;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{Binding, Sequent};

pub use check::{check_proof, check_proof_with, CheckFailure, FailureReason, Verdict};
pub use invert::{decide_classical, invert_negation};
pub use proof_json::ProofDocument;
pub use search::{search, Prover};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProofTree {
    pub sequent: Sequent,
    pub rule: String,
    pub binding: Binding,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    /// Indented listing, conclusion first, premises below.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&format!("{}   [{}]\n", self.sequent, self.rule));
        for c in &self.children {
            c.render_into(indent + 1, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Proved(ProofTree),
    /// The loop-checked search space was exhausted without a proof.
    Refuted,
    /// Some branch ran into the depth bound.
    Unknown {
        depth_bound: usize,
    },
}

impl SearchResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchResult::Proved(_))
    }

    pub fn verdict(&self) -> Verdict3 {
        match self {
            SearchResult::Proved(_) => Verdict3::Proved,
            SearchResult::Refuted => Verdict3::Refuted,
            SearchResult::Unknown { .. } => Verdict3::Unknown,
        }
    }
}

/// Search outcome without the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict3 {
    Proved,
    Refuted,
    Unknown,
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict3::Proved => "proved",
            Verdict3::Refuted => "refuted",
            Verdict3::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractionPolicy {
    /// Sides are sets; contraction and interchange never appear as
    /// backward steps.
    ImplicitSet,
    /// Sides are lists or multisets; at most this many contraction steps on
    /// any branch.
    ExplicitBounded(usize),
}

impl fmt::Display for ContractionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractionPolicy::ImplicitSet => f.write_str("implicit-set"),
            ContractionPolicy::ExplicitBounded(k) => write!(f, "bounded:{k}"),
        }
    }
}

impl std::str::FromStr for ContractionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "implicit-set" {
            return Ok(ContractionPolicy::ImplicitSet);
        }
        s.strip_prefix("bounded:")
            .and_then(|k| k.parse().ok())
            .map(ContractionPolicy::ExplicitBounded)
            .ok_or_else(|| format!("expected `implicit-set` or `bounded:K`, got `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchConfig {
    pub depth_bound: usize,
    pub multiset_mode: bool,
    pub contraction_policy: ContractionPolicy,
}

impl SearchConfig {
    pub const DEFAULT_DEPTH: usize = 64;

    pub fn with_depth(self, depth_bound: usize) -> SearchConfig {
        SearchConfig { depth_bound, ..self }
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth_bound: Self::DEFAULT_DEPTH,
            multiset_mode: true,
            contraction_policy: ContractionPolicy::ImplicitSet,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("sequent `{0}` is not propositional; first-order proofs can be checked but not searched")]
    NotPropositional(String),
    #[error(
        "malformed calculus: rule `{rule}` has premise metavariables {names:?} that the conclusion does not determine"
    )]
    Uninferable { rule: String, names: Vec<String> },
    #[error("rule `{0}` repeats a context variable in its conclusion, which set-based search does not support")]
    UnsupportedRule(String),
    #[error("calculus has no {0} rule needed to rebuild the proof")]
    MissingStructuralRule(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    Semantics(#[from] crate::semantics::SemanticsError),
    #[error("index {index} is out of range for a succedent of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("succedent formula `{0}` is not a negation")]
    NotANegation(String),
}
