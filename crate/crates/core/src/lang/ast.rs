use std::fmt;

use super::token::{tokenize, Symbol, Token, TokenKind};
use crate::error::{Error, Result};

/// Parsed expression. Parentheses are not represented; the printer inserts
/// them where precedence requires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative rational literal `num/den` (den = 1 for integers).
    Number { num: i64, den: i64 },
    Symbol(Symbol),
    Gen(usize),
    Proj(usize),
    Braid(usize, usize),
    Pow(Box<Expr>, i64),
    Adjoint(Box<Expr>),
    /// `x|vac>`: x applied to the ground state.
    Vac(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<()> {
        if self.eat(kind) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn index(&mut self) -> Result<usize> {
        match self.peek() {
            Some(&TokenKind::Int(v)) if v > 0 => {
                self.pos += 1;
                Ok(v as usize)
            }
            Some(TokenKind::Int(_)) => Err(self.error("indices must be positive")),
            _ => Err(self.error("expected an index")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat(&TokenKind::Minus) {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat(&TokenKind::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&TokenKind::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(&TokenKind::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut x = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            match self.peek() {
                Some(&TokenKind::Int(e)) => {
                    self.pos += 1;
                    x = Expr::Pow(Box::new(x), e);
                }
                _ => return Err(self.error("expected an integer exponent")),
            }
        }
        if self.eat(&TokenKind::Prime) {
            x = Expr::Adjoint(Box::new(x));
        }
        if self.eat(&TokenKind::Vac) {
            x = Expr::Vac(Box::new(x));
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(kind) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        match kind {
            TokenKind::Int(v) if v >= 0 => Ok(Expr::Number { num: v, den: 1 }),
            TokenKind::Rational(num, den) => Ok(Expr::Number { num, den }),
            TokenKind::Symbol(s) => Ok(Expr::Symbol(s)),
            TokenKind::GenOpen => {
                let i = self.index()?;
                self.expect(&TokenKind::RBracket, "']'")?;
                Ok(Expr::Gen(i))
            }
            TokenKind::ProjOpen => {
                let k = self.index()?;
                self.expect(&TokenKind::RBracket, "']'")?;
                Ok(Expr::Proj(k))
            }
            TokenKind::BraidOpen => {
                let k = self.index()?;
                self.expect(&TokenKind::Comma, "','")?;
                let l = self.index()?;
                self.expect(&TokenKind::RBracket, "']'")?;
                Ok(Expr::Braid(k, l))
            }
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(&TokenKind::RParen, "')'")?;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a scalar, c[i], E[k], b[k,l] or '('"))
            }
        }
    }
}

pub fn parse_tokens(tokens: &[Token], input_len: usize) -> Result<Expr> {
    let mut p = Parser {
        tokens,
        pos: 0,
        end: input_len,
    };
    let e = p.expr()?;
    if p.pos != tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse(input: &str) -> Result<Expr> {
    parse_tokens(&tokenize(input)?, input.len())
}

impl std::str::FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Binding strength used by the printer; higher binds tighter.
fn rank(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => 0,
        Expr::Mul(..) => 1,
        Expr::Vac(_) => 2,
        Expr::Adjoint(_) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min_rank: u8) -> fmt::Result {
    // a leading minus is only legal at the start of an expression
    if rank(e) < min_rank || (matches!(e, Expr::Neg(_)) && min_rank > 0) {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// Canonical printer; `parse(e.to_string()) == e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number { num, den: 1 } => write!(f, "{num}"),
            Expr::Number { num, den } => write!(f, "{num}/{den}"),
            Expr::Symbol(s) => f.write_str(s.name()),
            Expr::Gen(i) => write!(f, "c[{i}]"),
            Expr::Proj(k) => write!(f, "E[{k}]"),
            Expr::Braid(k, l) => write!(f, "b[{k},{l}]"),
            Expr::Pow(x, e) => {
                write_child(f, x, 5)?;
                write!(f, "^{e}")
            }
            Expr::Adjoint(x) => {
                write_child(f, x, 4)?;
                write!(f, "'")
            }
            Expr::Vac(x) => {
                write_child(f, x, 3)?;
                write!(f, "|vac>")
            }
            Expr::Neg(x) => {
                write!(f, "-")?;
                write_child(f, x, 1)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                // left operand may itself be a sum or a leading negation
                if matches!(**a, Expr::Neg(_)) {
                    write!(f, "{a}")?;
                } else {
                    write_child(f, a, 0)?;
                }
                f.write_str(if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                write_child(f, b, 1)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 1)?;
                f.write_str("*")?;
                write_child(f, b, 2)
            }
        }
    }
}
