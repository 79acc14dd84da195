//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('-' | '+') factor | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Implicit multiplication is rejected, and `/` only forms rational
//! literals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::var::{Var, VarKind};
use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent at {pos} must be a nonnegative integer literal")]
    NonIntegerExponent { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownVariable { pos, .. }
            | ParseError::NonIntegerExponent { pos } => *pos,
        }
    }
}

/// Declared variables available to the parser.
#[derive(Debug, Clone, Default)]
pub struct VariableTable {
    vars: BTreeMap<String, VarKind>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, kind: VarKind) -> &mut Self {
        self.vars.insert(name.to_string(), kind);
        self
    }

    pub fn with(names: &[&str], kind: VarKind) -> Self {
        let mut t = Self::new();
        for n in names {
            t.declare(n, kind);
        }
        t
    }

    pub fn kind(&self, name: &str) -> Option<VarKind> {
        self.vars.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.vars.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer {
            src: text.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            let (t, p) = lx.next()?;
            let end = t == Tok::End;
            out.push((t, p));
            if end {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        self.pos += 1;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if self.src.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    Tok::Decimal
                } else {
                    Tok::Int(digits.parse().unwrap())
                }
            }
            c if c.is_ascii_alphabetic() => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Ident(s.to_string())
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", c as char),
                })
            }
        };
        Ok((tok, start))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    table: &'a VariableTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.factor()?)
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    return Err(ParseError::NonIntegerExponent { pos });
                }
                let e: u32 = n
                    .try_into()
                    .map_err(|_| ParseError::NonIntegerExponent { pos })?;
                Ok(base.pow(e))
            }
            _ => Err(ParseError::NonIntegerExponent { pos }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => {
                            Ok(Polynomial::constant(Rational::new(n, d)))
                        }
                        Tok::Int(_) => Err(ParseError::Syntax {
                            pos: dpos,
                            msg: "zero denominator".into(),
                        }),
                        _ => Err(ParseError::Syntax {
                            pos: dpos,
                            msg: "`/` must be followed by an integer literal".into(),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(Rational::from_integer(n)))
                }
            }
            Tok::Decimal => Err(ParseError::Syntax {
                pos,
                msg: "decimal literals are not supported; use a/b".into(),
            }),
            Tok::Ident(name) => {
                if !self.table.contains(&name) {
                    return Err(ParseError::UnknownVariable { pos, name });
                }
                Ok(Polynomial::term(
                    Monomial::var(Var::new(&name)),
                    Rational::from_integer(1.into()),
                ))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            t => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected {}", describe(&t)),
            }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "integer",
        Tok::Decimal => "decimal",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

/// Parses `text` into canonical form. Every identifier must be declared in
/// `table`.
pub fn parse_poly(text: &str, table: &VariableTable) -> Result<Polynomial, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, at: 0, table };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
            p.syntax("implicit multiplication is not allowed; use `*`")
        }
        t => {
            let msg = format!("unexpected {}", describe(t));
            p.syntax(msg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn table() -> VariableTable {
        let mut t = VariableTable::with(&["x1", "x2"], VarKind::Divisor);
        t.declare("y", VarKind::Free);
        t
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &table()).unwrap()
    }

    #[test]
    fn reads_terms() {
        let q = p("x1^2*x2 - 3/2*y");
        let m = Monomial::from_pairs([(Var::new("x1"), 2), (Var::new("x2"), 1)]);
        assert_eq!(q.len(), 2);
        assert_eq!(q.coefficient(&m), rat(1, 1));
        assert_eq!(q.coefficient(&Monomial::var(Var::new("y"))), rat(-3, 2));
    }

    #[test]
    fn zero_is_empty() {
        assert!(p("0").is_empty());
        assert!(p("x1 - x1").is_zero());
    }

    #[test]
    fn expands_products() {
        assert_eq!(p("(x1 - x2)*(x1 + x2)"), p("x1^2 - x2^2"));
        assert_eq!(p("-x1^2"), -p("x1^2"));
        assert_eq!(p("2^3*y"), p("8*y"));
        assert_eq!(p("-(x1 - 1)"), p("1 - x1"));
    }

    #[test]
    fn errors() {
        let t = table();
        assert!(matches!(
            parse_poly("z + 1", &t),
            Err(ParseError::UnknownVariable { pos: 0, .. })
        ));
        assert!(matches!(
            parse_poly("x1^-1", &t),
            Err(ParseError::NonIntegerExponent { pos: 3 })
        ));
        assert!(matches!(
            parse_poly("x1^1/2", &t),
            Err(ParseError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse_poly("x1^y", &t),
            Err(ParseError::NonIntegerExponent { .. })
        ));
        assert!(matches!(parse_poly("2 x1", &t), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x1/2", &t), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(x1", &t), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("1.5*x1", &t), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("", &t), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", &t), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x1 # 2", &t), Err(ParseError::Syntax { pos: 3, .. })));
    }
}
