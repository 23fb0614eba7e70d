//! Sequents, rule schemas and calculi.
//!
//! A calculus is plain data: a list of rule schemas over schematic sequents
//! whose items are context variables (`Γ`), formula variables (`A`) and
//! patterns built from formula variables (`A ⊃ B`, `∀xA`, `A[t/x]`).

pub(crate) mod builtin;
mod json;
mod matching;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{print_formula, Formula, Term};

pub use builtin::{builtin_calculus, BuiltinId};
pub use json::CALCULUS_FORMAT_VERSION;
pub use matching::{instantiate, match_conclusion, Instance, MatchMode};
pub(crate) use matching::{instantiate_schematic, match_pattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("unknown calculus `{0}`")]
    UnknownCalculus(String),
    #[error("binding for rule `{rule}` is missing metavariable `{name}`")]
    IncompleteBinding { rule: String, name: String },
    #[error("rule `{rule}`: marker `{name}` must be bound to a variable")]
    NotAVariable { rule: String, name: String },
    #[error("rule `{rule}` cannot respect the {side} bound {bound}")]
    BoundViolation { rule: String, side: Side, bound: usize },
    #[error("invalid calculus document: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Antecedent,
    Succedent,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Antecedent => "antecedent",
            Side::Succedent => "succedent",
        })
    }
}

/// A concrete sequent `Γ ⊢ Θ` over ordered formula lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequent {
    #[serde(rename = "ant")]
    pub antecedent: Vec<Formula>,
    #[serde(rename = "suc")]
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Sequent {
        Sequent { antecedent, succedent }
    }

    pub fn side(&self, side: Side) -> &[Formula] {
        match side {
            Side::Antecedent => &self.antecedent,
            Side::Succedent => &self.succedent,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Vec<Formula> {
        match side {
            Side::Antecedent => &mut self.antecedent,
            Side::Succedent => &mut self.succedent,
        }
    }

    /// The same sequent with its arrow reversed.
    pub fn mirror(&self) -> Sequent {
        Sequent { antecedent: self.succedent.clone(), succedent: self.antecedent.clone() }
    }

    pub fn is_propositional(&self) -> bool {
        self.formulas().all(Formula::is_propositional)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.collect_atoms(&mut out);
        }
        out
    }

    /// Equality up to reordering within each side.
    pub fn multiset_eq(&self, other: &Sequent) -> bool {
        fn sorted(v: &[Formula]) -> Vec<&Formula> {
            let mut v: Vec<_> = v.iter().collect();
            v.sort();
            v
        }
        sorted(&self.antecedent) == sorted(&other.antecedent) && sorted(&self.succedent) == sorted(&other.succedent)
    }

    /// Parses the `A, B |- C` concrete syntax.
    pub fn parse(text: &str) -> Result<Sequent, crate::formula::ParseError> {
        crate::formula::parse_sequent(text)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Formula]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(&print_formula(x))?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.antecedent)?;
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("|-")?;
        if !self.succedent.is_empty() {
            f.write_str(" ")?;
        }
        write_list(f, &self.succedent)
    }
}

/// Pattern over formula metavariables, used inside schematic sequents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Pattern {
    Meta {
        name: String,
    },
    Not {
        arg: Box<Pattern>,
    },
    And {
        lhs: Box<Pattern>,
        rhs: Box<Pattern>,
    },
    Or {
        lhs: Box<Pattern>,
        rhs: Box<Pattern>,
    },
    Imp {
        lhs: Box<Pattern>,
        rhs: Box<Pattern>,
    },
    Forall {
        var: String,
        body: Box<Pattern>,
    },
    Exists {
        var: String,
        body: Box<Pattern>,
    },
    /// `body[term/var]`: the formula bound to `body` with the term bound to
    /// the marker `term` substituted for the variable bound to `var`.
    Subst {
        body: String,
        var: String,
        term: String,
    },
}

impl Pattern {
    pub fn meta(name: &str) -> Pattern {
        Pattern::Meta { name: name.to_string() }
    }

    fn collect_metas(&self, formulas: &mut BTreeSet<String>, terms: &mut BTreeSet<String>) {
        match self {
            Pattern::Meta { name } => {
                formulas.insert(name.clone());
            }
            Pattern::Not { arg } => arg.collect_metas(formulas, terms),
            Pattern::And { lhs, rhs } | Pattern::Or { lhs, rhs } | Pattern::Imp { lhs, rhs } => {
                lhs.collect_metas(formulas, terms);
                rhs.collect_metas(formulas, terms);
            }
            Pattern::Forall { var, body } | Pattern::Exists { var, body } => {
                terms.insert(var.clone());
                body.collect_metas(formulas, terms);
            }
            Pattern::Subst { body, var, term } => {
                formulas.insert(body.clone());
                terms.insert(var.clone());
                terms.insert(term.clone());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum SchemaItem {
    /// Context variable: any finite, possibly empty, list of formulas.
    Ctx(String),
    /// Formula variable: exactly one formula.
    Fvar(String),
    Pattern(Pattern),
}

impl SchemaItem {
    pub fn is_ctx(&self) -> bool {
        matches!(self, SchemaItem::Ctx(_))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchematicSequent {
    #[serde(rename = "ant")]
    pub antecedent: Vec<SchemaItem>,
    #[serde(rename = "suc")]
    pub succedent: Vec<SchemaItem>,
}

impl SchematicSequent {
    pub fn side(&self, side: Side) -> &[SchemaItem] {
        match side {
            Side::Antecedent => &self.antecedent,
            Side::Succedent => &self.succedent,
        }
    }

    /// Number of non-context items on `side`: the smallest width any
    /// instance can have there.
    pub fn min_width(&self, side: Side) -> usize {
        self.side(side).iter().filter(|i| !i.is_ctx()).count()
    }

    pub fn items(&self) -> impl Iterator<Item = &SchemaItem> {
        self.antecedent.iter().chain(self.succedent.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "marker", rename_all = "snake_case")]
pub enum SideCondition {
    /// The term bound to the marker must not occur free in the conclusion.
    EigenvariableFresh(String),
    /// The marker ranges over arbitrary terms.
    TermInstance(String),
}

impl SideCondition {
    pub fn marker(&self) -> &str {
        match self {
            SideCondition::EigenvariableFresh(m) | SideCondition::TermInstance(m) => m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleSchema {
    pub name: String,
    pub premises: Vec<SchematicSequent>,
    pub conclusion: SchematicSequent,
    #[serde(default)]
    pub side_conditions: Vec<SideCondition>,
    /// Accepted by the checker, never tried by proof search (cut).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub checker_only: bool,
}

/// Metavariables of a rule, split by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metavariables {
    pub contexts: BTreeSet<String>,
    pub formulas: BTreeSet<String>,
    pub terms: BTreeSet<String>,
}

impl Metavariables {
    fn of<'a>(seqs: impl IntoIterator<Item = &'a SchematicSequent>) -> Metavariables {
        let mut m = Metavariables::default();
        for s in seqs {
            for item in s.items() {
                match item {
                    SchemaItem::Ctx(n) => {
                        m.contexts.insert(n.clone());
                    }
                    SchemaItem::Fvar(n) => {
                        m.formulas.insert(n.clone());
                    }
                    SchemaItem::Pattern(p) => p.collect_metas(&mut m.formulas, &mut m.terms),
                }
            }
        }
        m
    }
}

impl RuleSchema {
    pub fn is_axiom(&self) -> bool {
        self.premises.is_empty()
    }

    pub fn metavariables(&self) -> Metavariables {
        Metavariables::of(self.premises.iter().chain(std::iter::once(&self.conclusion)))
    }

    pub fn conclusion_metavariables(&self) -> Metavariables {
        Metavariables::of(std::iter::once(&self.conclusion))
    }

    /// Metavariables of the premises that matching the conclusion cannot
    /// determine and no side condition declares.
    pub fn uninferable(&self) -> Vec<String> {
        let all = Metavariables::of(self.premises.iter());
        let known = self.conclusion_metavariables();
        let declared: BTreeSet<&str> = self.side_conditions.iter().map(SideCondition::marker).collect();
        let mut out = Vec::new();
        out.extend(all.contexts.difference(&known.contexts).cloned());
        out.extend(all.formulas.difference(&known.formulas).cloned());
        out.extend(all.terms.iter().filter(|t| !known.terms.contains(*t) && !declared.contains(t.as_str())).cloned());
        out
    }
}

/// Optional width limits on the two sides of every sequent of a calculus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub antecedent: Option<usize>,
    pub succedent: Option<usize>,
}

impl Bounds {
    pub const NONE: Bounds = Bounds { antecedent: None, succedent: None };

    pub fn get(&self, side: Side) -> Option<usize> {
        match side {
            Side::Antecedent => self.antecedent,
            Side::Succedent => self.succedent,
        }
    }

    pub fn admits_widths(&self, ant: usize, suc: usize) -> bool {
        self.antecedent.is_none_or(|b| ant <= b) && self.succedent.is_none_or(|b| suc <= b)
    }

    pub fn admits(&self, s: &Sequent) -> bool {
        self.admits_widths(s.antecedent.len(), s.succedent.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Calculus {
    pub name: String,
    pub rules: Vec<RuleSchema>,
    pub antecedent_bound: Option<usize>,
    pub succedent_bound: Option<usize>,
}

impl Calculus {
    pub fn bounds(&self) -> Bounds {
        Bounds { antecedent: self.antecedent_bound, succedent: self.succedent_bound }
    }

    pub fn rule(&self, name: &str) -> Option<&RuleSchema> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// Static bound check: on every rule, each schematic sequent must admit
    /// at least one instance within the bounds, i.e. its context-free width
    /// may not already exceed them.
    pub fn check_bounds(&self) -> Result<(), CalculusError> {
        let bounds = self.bounds();
        for rule in &self.rules {
            for s in rule.premises.iter().chain(std::iter::once(&rule.conclusion)) {
                for side in [Side::Antecedent, Side::Succedent] {
                    if let Some(bound) = bounds.get(side) {
                        if s.min_width(side) > bound {
                            return Err(CalculusError::BoundViolation { rule: rule.name.clone(), side, bound });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Names of rules sharing a name with an earlier rule.
    pub fn duplicate_rule_names(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.rules.iter().filter(|r| !seen.insert(r.name.as_str())).map(|r| r.name.clone()).collect()
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Calculus, CalculusError> {
        json::from_json(text)
    }

    /// Human-readable rule listing with a bounds header.
    pub fn render_text(&self) -> String {
        render::render_calculus(self)
    }
}

/// Assignment of metavariables to concrete syntax.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binding {
    #[serde(default)]
    pub contexts: BTreeMap<String, Vec<Formula>>,
    #[serde(default)]
    pub formulas: BTreeMap<String, Formula>,
    #[serde(default)]
    pub terms: BTreeMap<String, Term>,
}

impl Binding {
    pub fn with_context(mut self, name: &str, fs: Vec<Formula>) -> Binding {
        self.contexts.insert(name.to_string(), fs);
        self
    }

    pub fn with_formula(mut self, name: &str, f: Formula) -> Binding {
        self.formulas.insert(name.to_string(), f);
        self
    }

    pub fn with_term(mut self, name: &str, t: Term) -> Binding {
        self.terms.insert(name.to_string(), t);
        self
    }
}

pub use render::{render_rule, render_schematic};
