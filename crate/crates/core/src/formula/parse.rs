use std::sync::Arc;

use thiserror::Error;

use super::{is_variable_name, Formula, Term};
use crate::calculus::Sequent;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Bar,
    Arrow,
    Turnstile,
    LParen,
    RParen,
    Comma,
    Dot,
    Forall,
    Exists,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 1;
                Tok::Turnstile
            }
            b'|' => Tok::Bar,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                while i + 1 < bytes.len() && bytes[i + 1] == b'\'' {
                    i += 1;
                }
                match &text[start..=i] {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let found = text[start..].chars().next().map(|c| format!("`{c}`")).unwrap_or_default();
                return Err(ParseError { offset: start, expected: "a token".into(), found });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError { offset: *offset, expected: expected.to_string(), found: tok.describe() }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => Err(self.error("end of input")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let var = match self.peek().clone() {
                    Tok::Ident(v) if is_variable_name(&v) => {
                        self.bump();
                        v
                    }
                    _ => return Err(self.error("a variable (identifier starting with u-z)")),
                };
                self.expect(Tok::Dot, "`.`")?;
                let body = Arc::new(self.formula()?);
                Ok(if universal { Formula::Forall(var, body) } else { Formula::Exists(var, body) })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Formula::Atom(name));
                }
                self.bump();
                let mut args = vec![self.term()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Ok(Formula::Pred(name, args))
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::from_ident(&name))
            }
            _ => Err(self.error("a term")),
        }
    }

    fn formula_list(&mut self, stop: &Tok) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == stop {
            return Ok(out);
        }
        out.push(self.formula()?);
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.formula()?);
        }
        Ok(out)
    }
}

/// Parses one formula. Whitespace is insignificant.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a possibly empty comma-separated list of formulas.
pub fn parse_formula_list(text: &str) -> Result<Vec<Formula>, ParseError> {
    let mut p = Parser::new(text)?;
    let list = p.formula_list(&Tok::Eof)?;
    p.finish()?;
    Ok(list)
}

/// Parses `A1, ..., An |- B1, ..., Bm`; either side may be empty.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let antecedent = p.formula_list(&Tok::Turnstile)?;
    p.expect(Tok::Turnstile, "`,` or `|-`")?;
    let succedent = p.formula_list(&Tok::Eof)?;
    p.finish()?;
    Ok(Sequent { antecedent, succedent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn conjunction_with_negation() {
        assert_eq!(parse_formula("p & ~p").unwrap(), Formula::and(p("p"), Formula::not(p("p"))));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(parse_formula("p -> q -> r").unwrap(), Formula::imp(p("p"), Formula::imp(p("q"), p("r"))));
    }

    #[test]
    fn quantifier_body_extends_right() {
        assert_eq!(
            parse_formula("forall x. P(x) -> Q(x)").unwrap(),
            Formula::forall("x", Formula::imp(Formula::pred("P", &["x"]), Formula::pred("Q", &["x"])))
        );
    }

    #[test]
    fn precedence_and_left_association() {
        let f = parse_formula("p | q & r | ~s").unwrap();
        assert_eq!(f, Formula::or(Formula::or(p("p"), Formula::and(p("q"), p("r"))), Formula::not(p("s"))));
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse_formula("p&~p").unwrap(), parse_formula("  p  &\n ~ p ").unwrap());
    }

    #[test]
    fn error_offsets() {
        let e = parse_formula("p & ").unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(e.expected, "a formula");
        let e = parse_formula("(p | q").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_formula("p $ q").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_formula("p q").unwrap_err();
        assert_eq!((e.offset, e.expected.as_str()), (2, "end of input"));
    }

    #[test]
    fn quantifier_requires_variable() {
        let e = parse_formula("forall a. P(a)").unwrap_err();
        assert_eq!(e.offset, 7);
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, q -> r |- r, Q(x, c)").unwrap();
        assert_eq!(s.antecedent.len(), 2);
        assert_eq!(s.succedent.len(), 2);
        let s = parse_sequent("|-").unwrap();
        assert!(s.antecedent.is_empty() && s.succedent.is_empty());
        let s = parse_sequent("p & ~p |-").unwrap();
        assert_eq!(s.antecedent.len(), 1);
        assert!(parse_sequent("p, |- q").is_err());
        assert!(parse_sequent("p |- q |- r").is_err());
    }

    #[test]
    fn primes_in_identifiers() {
        assert_eq!(
            parse_formula("exists y'. Q(y, y')").unwrap(),
            Formula::exists("y'", Formula::pred("Q", &["y", "y'"]))
        );
    }
}
