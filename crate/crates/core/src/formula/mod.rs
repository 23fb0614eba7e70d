//! Formula syntax for the propositional and first-order fragments.
//!
//! Terms are variables and constants only. The two are told apart
//! lexically: an identifier whose first character is one of `u`..=`z` is a
//! variable, anything else is a constant. Quantifiers bind variables only.

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use parse::{parse_formula, parse_formula_list, parse_sequent, ParseError};
pub use print::print_formula;

/// A first-order term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    /// Builds the term an identifier denotes under the lexical convention.
    pub fn from_ident(name: &str) -> Term {
        if is_variable_name(name) {
            Term::Var(name.to_string())
        } else {
            Term::Const(name.to_string())
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True for identifiers in the variable class (`u`..=`z` initial).
pub fn is_variable_name(name: &str) -> bool {
    matches!(name.chars().next(), Some('u'..='z'))
}

/// True for identifiers accepted by the concrete grammar: a letter, then
/// letters, digits or underscores, then optional primes.
pub fn is_identifier(name: &str) -> bool {
    let body = name.trim_end_matches('\'');
    let mut chars = body.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !matches!(body, "forall" | "exists")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Pred(String, Vec<Term>),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(String, Arc<Formula>),
    Exists(String, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn pred(name: &str, args: &[&str]) -> Formula {
        Formula::Pred(name.to_string(), args.iter().map(|a| Term::from_ident(a)).collect())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Arc::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Arc::new(body))
    }

    /// No predicates or quantifiers anywhere in the tree.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Pred(..) | Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::Not(a) => a.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.is_propositional() && b.is_propositional(),
        }
    }

    /// Number of connective and quantifier nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Pred(..) => 0,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Propositional atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(n) => {
                out.insert(n.clone());
            }
            Formula::Pred(..) => {}
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_) => {}
            Formula::Pred(_, args) => {
                for t in args {
                    if let Term::Var(v) = t {
                        if !bound.contains(&v.as_str()) {
                            out.insert(v.clone());
                        }
                    }
                }
            }
            Formula::Not(a) => a.collect_free_vars(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free_vars(bound, out);
                b.collect_free_vars(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v);
                body.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    /// Does `name` occur as a constant or as a free variable?
    pub fn mentions_free(&self, name: &str) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Pred(_, args) => args.iter().any(|t| t.name() == name),
            Formula::Not(a) => a.mentions_free(name),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.mentions_free(name) || b.mentions_free(name)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => v != name && body.mentions_free(name),
        }
    }

    /// Capture-avoiding substitution of `term` for the free occurrences of
    /// the variable `var`. A binder that would capture `term` is renamed by
    /// priming until the name is clear.
    pub fn substitute(&self, var: &str, term: &Term) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Pred(p, args) => Formula::Pred(
                p.clone(),
                args.iter()
                    .map(|t| match t {
                        Term::Var(v) if v == var => term.clone(),
                        other => other.clone(),
                    })
                    .collect(),
            ),
            Formula::Not(a) => Formula::not(a.substitute(var, term)),
            Formula::And(a, b) => Formula::and(a.substitute(var, term), b.substitute(var, term)),
            Formula::Or(a, b) => Formula::or(a.substitute(var, term), b.substitute(var, term)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(var, term), b.substitute(var, term)),
            Formula::Forall(v, body) => {
                let (v, body) = subst_binder(v, body, var, term);
                Formula::Forall(v, Arc::new(body))
            }
            Formula::Exists(v, body) => {
                let (v, body) = subst_binder(v, body, var, term);
                Formula::Exists(v, Arc::new(body))
            }
        }
    }
}

fn subst_binder(bound: &str, body: &Formula, var: &str, term: &Term) -> (String, Formula) {
    if bound == var {
        return (bound.to_string(), body.clone());
    }
    let captures = matches!(term, Term::Var(t) if t == bound);
    if captures && body.free_vars().contains(var) {
        let avoid = body.free_vars();
        let mut fresh = format!("{bound}'");
        while avoid.contains(&fresh) || fresh == var {
            fresh.push('\'');
        }
        let renamed = body.substitute(bound, &Term::Var(fresh.clone()));
        (fresh, renamed.substitute(var, term))
    } else {
        (bound.to_string(), body.substitute(var, term))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_formula(self))
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if !is_identifier(&text) {
            return Err(serde::de::Error::custom(format!("invalid term `{text}`")));
        }
        Ok(Term::from_ident(&text))
    }
}
