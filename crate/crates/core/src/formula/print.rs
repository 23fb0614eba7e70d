use super::Formula;

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;

/// Canonical ASCII rendering with the fewest parentheses the grammar allows.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, 0, true, &mut out);
    out
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => u8::MAX,
    }
}

/// `open` is true when nothing follows `f` before the enclosing bracket or
/// the end of input, which is the only place a quantifier may sit bare.
fn write(f: &Formula, min_prec: u8, open: bool, out: &mut String) {
    let needs_parens = prec(f) < min_prec || (matches!(f, Formula::Forall(..) | Formula::Exists(..)) && !open);
    if needs_parens {
        out.push('(');
        write(f, 0, true, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Atom(n) => out.push_str(n),
        Formula::Pred(n, args) => {
            out.push_str(n);
            out.push('(');
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(t.name());
            }
            out.push(')');
        }
        Formula::Not(a) => {
            out.push('~');
            write(a, u8::MAX, open, out);
        }
        Formula::And(a, b) => {
            write(a, AND, false, out);
            out.push_str(" & ");
            write(b, AND + 1, open, out);
        }
        Formula::Or(a, b) => {
            write(a, OR, false, out);
            out.push_str(" | ");
            write(b, OR + 1, open, out);
        }
        Formula::Imp(a, b) => {
            write(a, IMP + 1, false, out);
            out.push_str(" -> ");
            write(b, IMP, open, out);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { "forall " } else { "exists " });
            out.push_str(v);
            out.push_str(". ");
            write(body, 0, open, out);
        }
    }
}
