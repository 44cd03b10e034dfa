use crate::error::{Error, Result};

/// Named scalar constants of the expression language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Q,
    Zeta,
    Omega,
    OmegaSqrt,
    SqrtN,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Q => "q",
            Symbol::Zeta => "zeta",
            Symbol::Omega => "omega",
            Symbol::OmegaSqrt => "omegaSqrt",
            Symbol::SqrtN => "sqrtN",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "q" => Symbol::Q,
            "zeta" => Symbol::Zeta,
            "omega" => Symbol::Omega,
            "omegaSqrt" => Symbol::OmegaSqrt,
            "sqrtN" => Symbol::SqrtN,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    /// `c[`
    GenOpen,
    /// `E[`
    ProjOpen,
    /// `b[`
    BraidOpen,
    Symbol(Symbol),
    /// Integer literal; negative only directly after `^`.
    Int(i64),
    /// `p/r`
    Rational(i64, i64),
    Comma,
    RBracket,
    LParen,
    RParen,
    Caret,
    Star,
    Plus,
    Minus,
    Prime,
    /// `|vac>`
    Vac,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub offset: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn parse_int(text: &str, offset: usize) -> Result<i64> {
    text.parse::<i64>().map_err(|_| syntax(offset, format!("integer literal '{text}' out of range")))
}

pub fn tokenize(input: &str) -> Result<Vec<Token>> {
    let bytes = input.as_bytes();
    let mut tokens: Vec<Token> = Vec::new();
    // open brackets/parentheses with their offsets, for balance diagnostics
    let mut open: Vec<(u8, usize)> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        let push = |tokens: &mut Vec<Token>, kind| tokens.push(Token { kind, offset: start });
        match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &input[start..i];
                let opener = match word {
                    "c" => Some(TokenKind::GenOpen),
                    "E" => Some(TokenKind::ProjOpen),
                    "b" => Some(TokenKind::BraidOpen),
                    _ => None,
                };
                if let Some(kind) = opener {
                    if bytes.get(i) != Some(&b'[') {
                        return Err(syntax(start, format!("expected '[' after '{word}'")));
                    }
                    open.push((b'[', i));
                    i += 1;
                    push(&mut tokens, kind);
                } else if let Some(sym) = Symbol::from_name(word) {
                    push(&mut tokens, TokenKind::Symbol(sym));
                } else {
                    return Err(syntax(start, format!("unknown identifier '{word}'")));
                }
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num = parse_int(&input[start..i], start)?;
                if bytes.get(i) == Some(&b'/') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                    let dstart = i + 1;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den = parse_int(&input[dstart..i], dstart)?;
                    if den == 0 {
                        return Err(syntax(dstart, "zero denominator"));
                    }
                    push(&mut tokens, TokenKind::Rational(num, den));
                } else {
                    push(&mut tokens, TokenKind::Int(num));
                }
            }
            b'-' => {
                let after_caret = tokens.last().is_some_and(|t| t.kind == TokenKind::Caret);
                if after_caret && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    push(&mut tokens, TokenKind::Int(parse_int(&input[start..i], start)?));
                } else {
                    i += 1;
                    push(&mut tokens, TokenKind::Minus);
                }
            }
            b'|' => {
                if input[i..].starts_with("|vac>") {
                    i += 5;
                    push(&mut tokens, TokenKind::Vac);
                } else {
                    return Err(syntax(start, "expected '|vac>'"));
                }
            }
            b'[' => return Err(syntax(start, "'[' must follow c, E or b")),
            b']' => {
                match open.pop() {
                    Some((b'[', _)) => {}
                    Some((_, at)) => return Err(syntax(start, format!("']' closes '(' opened at offset {at}"))),
                    None => return Err(syntax(start, "unmatched ']'")),
                }
                i += 1;
                push(&mut tokens, TokenKind::RBracket);
            }
            b'(' => {
                open.push((b'(', i));
                i += 1;
                push(&mut tokens, TokenKind::LParen);
            }
            b')' => {
                match open.pop() {
                    Some((b'(', _)) => {}
                    Some((_, at)) => return Err(syntax(start, format!("')' closes '[' opened at offset {at}"))),
                    None => return Err(syntax(start, "unmatched ')'")),
                }
                i += 1;
                push(&mut tokens, TokenKind::RParen);
            }
            b',' | b'^' | b'*' | b'+' | b'\'' => {
                let kind = match ch {
                    b',' => TokenKind::Comma,
                    b'^' => TokenKind::Caret,
                    b'*' => TokenKind::Star,
                    b'+' => TokenKind::Plus,
                    _ => TokenKind::Prime,
                };
                i += 1;
                push(&mut tokens, kind);
            }
            _ => {
                let c = input[i..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{c}'")));
            }
        }
    }
    if let Some(&(kind, at)) = open.last() {
        let what = if kind == b'[' { "bracket" } else { "parenthesis" };
        return Err(syntax(input.len(), format!("unclosed {what} opened at offset {at}")));
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_product_token_count() {
        assert_eq!(tokenize("b[1,2]*b[2,3]").unwrap().len(), 11);
    }

    #[test]
    fn signed_exponent() {
        let kinds: Vec<_> = tokenize("c[1]^-2").unwrap().into_iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![TokenKind::GenOpen, TokenKind::Int(1), TokenKind::RBracket, TokenKind::Caret, TokenKind::Int(-2)]
        );
        // elsewhere '-' is an operator
        let kinds: Vec<_> = tokenize("1-2").unwrap().into_iter().map(|t| t.kind).collect();
        assert_eq!(kinds, vec![TokenKind::Int(1), TokenKind::Minus, TokenKind::Int(2)]);
    }

    #[test]
    fn unclosed_bracket_reports_end_offset() {
        match tokenize("c[1") {
            Err(Error::Syntax { offset, message }) => {
                assert_eq!(offset, 3);
                assert!(message.contains("unclosed bracket"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_characters_are_located() {
        assert!(matches!(tokenize("c[1] # 2"), Err(Error::Syntax { offset: 5, .. })));
        assert!(matches!(tokenize("foo"), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn symbols_rationals_and_vacuum() {
        let kinds: Vec<_> = tokenize("3/4*omegaSqrt'|vac>").unwrap().into_iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TokenKind::Rational(3, 4),
                TokenKind::Star,
                TokenKind::Symbol(Symbol::OmegaSqrt),
                TokenKind::Prime,
                TokenKind::Vac
            ]
        );
        assert!(tokenize("1/0").is_err());
    }
}
