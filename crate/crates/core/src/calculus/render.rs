use super::{Calculus, Pattern, RuleSchema, SchemaItem, SchematicSequent, SideCondition};

fn pattern(p: &Pattern, nested: bool) -> String {
    let binary = |l: &Pattern, op: &str, r: &Pattern| {
        let s = format!("{}{op}{}", pattern(l, true), pattern(r, true));
        if nested {
            format!("({s})")
        } else {
            s
        }
    };
    match p {
        Pattern::Meta { name } => name.clone(),
        Pattern::Not { arg } => format!("¬{}", pattern(arg, true)),
        Pattern::And { lhs, rhs } => binary(lhs, "∧", rhs),
        Pattern::Or { lhs, rhs } => binary(lhs, "∨", rhs),
        Pattern::Imp { lhs, rhs } => binary(lhs, "⊃", rhs),
        Pattern::Forall { var, body } => format!("∀{var}{}", pattern(body, true)),
        Pattern::Exists { var, body } => format!("∃{var}{}", pattern(body, true)),
        Pattern::Subst { body, var, term } => format!("{body}[{term}/{var}]"),
    }
}

fn item(i: &SchemaItem) -> String {
    match i {
        SchemaItem::Ctx(n) | SchemaItem::Fvar(n) => n.clone(),
        SchemaItem::Pattern(p) => pattern(p, false),
    }
}

/// `Θ,A ⊢ Γ` style rendering.
pub fn render_schematic(s: &SchematicSequent) -> String {
    let side = |items: &[SchemaItem]| items.iter().map(item).collect::<Vec<_>>().join(",");
    format!("{} ⊢ {}", side(&s.antecedent), side(&s.succedent)).trim().to_string()
}

/// `name: premise ; premise / conclusion` with side conditions appended.
pub fn render_rule(r: &RuleSchema) -> String {
    let mut out = format!("{}: ", r.name);
    if !r.premises.is_empty() {
        let premises: Vec<_> = r.premises.iter().map(render_schematic).collect();
        out.push_str(&premises.join(" ; "));
        out.push_str(" / ");
    }
    out.push_str(&render_schematic(&r.conclusion));
    for c in &r.side_conditions {
        match c {
            SideCondition::EigenvariableFresh(m) => out.push_str(&format!("  [{m} eigenvariable]")),
            SideCondition::TermInstance(m) => out.push_str(&format!("  [{m} any term]")),
        }
    }
    if r.checker_only {
        out.push_str("  (checker only)");
    }
    out
}

fn bound(b: Option<usize>) -> String {
    b.map_or_else(|| "unbounded".to_string(), |n| format!("≤ {n}"))
}

pub(super) fn render_calculus(c: &Calculus) -> String {
    let mut out = format!(
        "{}: antecedent {}, succedent {}, {} rules\n",
        c.name,
        bound(c.antecedent_bound),
        bound(c.succedent_bound),
        c.rules.len()
    );
    for r in &c.rules {
        out.push_str("  ");
        out.push_str(&render_rule(r));
        out.push('\n');
    }
    out
}
