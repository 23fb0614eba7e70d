use std::fmt;
use std::str::FromStr;

use super::{Calculus, CalculusError, Pattern, RuleSchema, SchemaItem, SchematicSequent, Side, SideCondition};
use crate::formula::{parse_formula, Formula};
use crate::stahlize::stahlize_calculus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinId {
    Lk,
    Lj,
    /// Dual of LK.
    Sp,
    /// Dual of LJ.
    AntiLj,
}

impl BuiltinId {
    pub const ALL: [BuiltinId; 4] = [BuiltinId::Lk, BuiltinId::Lj, BuiltinId::Sp, BuiltinId::AntiLj];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinId::Lk => "LK",
            BuiltinId::Lj => "LJ",
            BuiltinId::Sp => "SP",
            BuiltinId::AntiLj => "ANTI_LJ",
        }
    }

    /// The builtin whose dual this one is.
    pub fn dual(self) -> BuiltinId {
        match self {
            BuiltinId::Lk => BuiltinId::Sp,
            BuiltinId::Sp => BuiltinId::Lk,
            BuiltinId::Lj => BuiltinId::AntiLj,
            BuiltinId::AntiLj => BuiltinId::Lj,
        }
    }
}

impl fmt::Display for BuiltinId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinId {
    type Err = CalculusError;

    /// Accepts the short ids as well as the computed calculus names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "LK" | "lk" => Ok(BuiltinId::Lk),
            "LJ" | "lj" => Ok(BuiltinId::Lj),
            "SP" | "sp" | "LK°" => Ok(BuiltinId::Sp),
            "ANTI_LJ" | "anti_lj" | "LJ°" => Ok(BuiltinId::AntiLj),
            other => Err(CalculusError::UnknownCalculus(other.to_string())),
        }
    }
}

pub fn builtin_calculus(id: BuiltinId) -> Calculus {
    match id {
        BuiltinId::Lk => lk(),
        BuiltinId::Lj => lj(),
        BuiltinId::Sp => stahlize_calculus(&lk()),
        BuiltinId::AntiLj => stahlize_calculus(&lj()),
    }
}

fn is_ctx_name(s: &str) -> bool {
    matches!(s, "Γ" | "Δ" | "Θ" | "Λ" | "Σ" | "Π")
}

fn pattern_of(f: &Formula) -> Pattern {
    let b = |f: &Formula| Box::new(pattern_of(f));
    match f {
        Formula::Atom(n) => Pattern::meta(n),
        Formula::Not(a) => Pattern::Not { arg: b(a) },
        Formula::And(x, y) => Pattern::And { lhs: b(x), rhs: b(y) },
        Formula::Or(x, y) => Pattern::Or { lhs: b(x), rhs: b(y) },
        Formula::Imp(x, y) => Pattern::Imp { lhs: b(x), rhs: b(y) },
        Formula::Forall(v, body) => Pattern::Forall { var: v.clone(), body: b(body) },
        Formula::Exists(v, body) => Pattern::Exists { var: v.clone(), body: b(body) },
        Formula::Pred(..) => panic!("predicate in rule schema"),
    }
}

fn item(text: &str) -> SchemaItem {
    let text = text.trim();
    if is_ctx_name(text) {
        return SchemaItem::Ctx(text.to_string());
    }
    // `A[t/x]`
    if let Some(inner) = text.strip_suffix(']') {
        let (body, sub) = inner.split_once('[').expect("substitution item");
        let (term, var) = sub.split_once('/').expect("substitution item");
        return SchemaItem::Pattern(Pattern::Subst {
            body: body.to_string(),
            var: var.to_string(),
            term: term.to_string(),
        });
    }
    match parse_formula(text).expect("builtin schema item") {
        Formula::Atom(n) => SchemaItem::Fvar(n),
        f => SchemaItem::Pattern(pattern_of(&f)),
    }
}

fn side(text: &str) -> Vec<SchemaItem> {
    let text = text.trim();
    if text.is_empty() {
        Vec::new()
    } else {
        text.split(',').map(item).collect()
    }
}

/// Builds a schematic sequent from `A, Γ |- Θ, A & B` notation.
pub(crate) fn schema(text: &str) -> SchematicSequent {
    let (ant, suc) = text.split_once("|-").expect("schema turnstile");
    SchematicSequent { antecedent: side(ant), succedent: side(suc) }
}

fn rule(name: &str, premises: &[&str], conclusion: &str) -> RuleSchema {
    RuleSchema {
        name: name.to_string(),
        premises: premises.iter().map(|p| schema(p)).collect(),
        conclusion: schema(conclusion),
        side_conditions: Vec::new(),
        checker_only: false,
    }
}

fn with_condition(mut r: RuleSchema, c: SideCondition) -> RuleSchema {
    r.side_conditions.push(c);
    r
}

/// Gentzen's LK with explicit structural rules.
fn lk() -> Calculus {
    let eigen = |m: &str| SideCondition::EigenvariableFresh(m.to_string());
    let term = |m: &str| SideCondition::TermInstance(m.to_string());
    let mut cut = rule("cut", &["Γ |- Θ, A", "A, Δ |- Λ"], "Γ, Δ |- Θ, Λ");
    cut.checker_only = true;
    let rules = vec![
        rule("ax", &[], "A |- A"),
        rule("thin-L", &["Γ |- Θ"], "A, Γ |- Θ"),
        rule("thin-R", &["Γ |- Θ"], "Γ |- Θ, A"),
        rule("contr-L", &["A, A, Γ |- Θ"], "A, Γ |- Θ"),
        rule("contr-R", &["Γ |- Θ, A, A"], "Γ |- Θ, A"),
        rule("exch-L", &["Δ, A, B, Γ |- Θ"], "Δ, B, A, Γ |- Θ"),
        rule("exch-R", &["Γ |- Θ, A, B, Λ"], "Γ |- Θ, B, A, Λ"),
        cut,
        rule("¬L", &["Γ |- Θ, A"], "~A, Γ |- Θ"),
        rule("¬R", &["A, Γ |- Θ"], "Γ |- Θ, ~A"),
        rule("∧L1", &["A, Γ |- Θ"], "A & B, Γ |- Θ"),
        rule("∧L2", &["B, Γ |- Θ"], "A & B, Γ |- Θ"),
        rule("∧R", &["Γ |- Θ, A", "Γ |- Θ, B"], "Γ |- Θ, A & B"),
        rule("∨L", &["A, Γ |- Θ", "B, Γ |- Θ"], "A | B, Γ |- Θ"),
        rule("∨R1", &["Γ |- Θ, A"], "Γ |- Θ, A | B"),
        rule("∨R2", &["Γ |- Θ, B"], "Γ |- Θ, A | B"),
        rule("⊃L", &["Γ |- Θ, A", "B, Δ |- Λ"], "A -> B, Γ, Δ |- Θ, Λ"),
        rule("⊃R", &["A, Γ |- Θ, B"], "Γ |- Θ, A -> B"),
        with_condition(rule("∀L", &["A[t/x], Γ |- Θ"], "forall x. A, Γ |- Θ"), term("t")),
        with_condition(rule("∀R", &["Γ |- Θ, A[a/x]"], "Γ |- Θ, forall x. A"), eigen("a")),
        with_condition(rule("∃L", &["A[a/x], Γ |- Θ"], "exists x. A, Γ |- Θ"), eigen("a")),
        with_condition(rule("∃R", &["Γ |- Θ, A[t/x]"], "Γ |- Θ, exists x. A"), term("t")),
    ];
    Calculus { name: "LK".into(), rules, antecedent_bound: None, succedent_bound: None }
}

/// LK restricted to single-formula succedents. Rules that cannot fit the
/// bound at all (succedent contraction and interchange) are dropped.
fn lj() -> Calculus {
    let lk = lk();
    let rules = lk
        .rules
        .into_iter()
        .filter(|r| r.premises.iter().chain(std::iter::once(&r.conclusion)).all(|s| s.min_width(Side::Succedent) <= 1))
        .collect();
    Calculus { name: "LJ".into(), rules, antecedent_bound: None, succedent_bound: Some(1) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lj_bound() {
        let lj = builtin_calculus(BuiltinId::Lj);
        assert_eq!(lj.succedent_bound, Some(1));
        assert_eq!(lj.antecedent_bound, None);
        assert!(lj.rule("contr-R").is_none());
        assert!(lj.rule("exch-R").is_none());
        assert!(lj.rule("contr-L").is_some());
        lj.check_bounds().unwrap();
    }

    #[test]
    fn anti_lj_bound_swaps() {
        let anti = builtin_calculus(BuiltinId::AntiLj);
        assert_eq!(anti.antecedent_bound, Some(1));
        assert_eq!(anti.succedent_bound, None);
        assert_eq!(anti.name, "LJ°");
        anti.check_bounds().unwrap();
    }

    #[test]
    fn lk_fails_a_tight_bound() {
        let mut lk = builtin_calculus(BuiltinId::Lk);
        lk.succedent_bound = Some(1);
        assert!(matches!(lk.check_bounds(), Err(CalculusError::BoundViolation { .. })));
    }

    #[test]
    fn sp_negation_left_image() {
        let sp = builtin_calculus(BuiltinId::Sp);
        let r = sp.rule("¬L°").unwrap();
        assert_eq!(r.premises, vec![schema("Θ, A |- Γ")]);
        assert_eq!(r.conclusion, schema("Θ |- ~A, Γ"));
    }

    #[test]
    fn rule_names_unique() {
        for id in BuiltinId::ALL {
            assert!(builtin_calculus(id).duplicate_rule_names().is_empty(), "{id}");
        }
    }

    #[test]
    fn lk_inventory() {
        let lk = builtin_calculus(BuiltinId::Lk);
        let names: Vec<_> = lk.rules.iter().map(|r| r.name.as_str()).collect();
        for n in ["ax", "¬L", "¬R", "∧L1", "∧L2", "∧R", "∨L", "∨R1", "∨R2", "⊃L", "⊃R", "∀L", "∀R", "∃L", "∃R", "cut"]
        {
            assert!(names.contains(&n), "{n}");
        }
        assert!(lk.rule("cut").unwrap().checker_only);
        assert_eq!(lk.rule("∀R").unwrap().side_conditions, vec![SideCondition::EigenvariableFresh("a".into())]);
    }

    #[test]
    fn ids_parse() {
        assert_eq!("ANTI_LJ".parse::<BuiltinId>().unwrap(), BuiltinId::AntiLj);
        assert_eq!("LK°".parse::<BuiltinId>().unwrap(), BuiltinId::Sp);
        assert!("LX".parse::<BuiltinId>().is_err());
    }
}
