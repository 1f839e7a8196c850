//! Text form of elements and the polynomial expression grammar shared by
//! model files and emitted results.
//!
//! An element is written as terms joined by ` + `, each term a coefficient
//! `p/q` (or `p` when `q = 1`) followed by space-separated `name^e` factors,
//! e.g. `1 x^2 + -2 x^1 s1x^1`. The zero element is `0`.
//!
//! The expression grammar accepts that form and the usual infix notation:
//! rationals, generator names, `*` (or juxtaposition), `^`, `+`, `-`, and
//! parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gca::{Element, FreeGca};

pub fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_element(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let alg = e.algebra();
    e.terms()
        .iter()
        .map(|(m, c)| {
            if m.is_one() {
                format_rational(c)
            } else {
                format!("{} {}", format_rational(c), alg.format_monomial(m))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str, line: usize, column0: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = column0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '/' => Some(Token::Slash),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(token) = single {
            out.push(Spanned { token, column });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<BigInt>().expect("digits parse");
            out.push(Spanned {
                token: Token::Number(n),
                column,
            });
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Spanned {
                token: Token::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else {
            return Err(Error::Parse {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_column: usize,
    algebra: &'a FreeGca,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|s| s.column).unwrap_or(self.end_column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc + &rhs;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Element> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.product(),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Number(_)) | Some(Token::Ident(_)) | Some(Token::LParen)
        )
    }

    fn product(&mut self) -> Result<Element> {
        let mut acc = self.power()?;
        loop {
            if let Some(Token::Star) = self.peek() {
                self.pos += 1;
                let rhs = self.power()?;
                acc = &acc * &rhs;
            } else if self.starts_factor() {
                let rhs = self.power()?;
                acc = &acc * &rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Number(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.error("exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.error("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Element> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Token::Number(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            value /= BigRational::from_integer(d);
                        }
                        _ => return Err(self.error("expected a nonzero integer denominator")),
                    }
                }
                Ok(Element::scalar(self.algebra, value))
            }
            Some(Token::Ident(name)) => {
                if !self.algebra.contains(&name) {
                    return Err(self.error(format!("unknown generator `{name}`")));
                }
                self.pos += 1;
                Element::generator(self.algebra, &name)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.error("expected `)`")),
                }
            }
            Some(t) => Err(self.error(format!("unexpected token {t:?}"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

/// Parses an expression in `algebra`. `line` and `column` locate the text
/// for error messages (1-based).
pub fn parse_expression_at(text: &str, algebra: &FreeGca, line: usize, column: usize) -> Result<Element> {
    let tokens = tokenize(text, line, column)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        line,
        end_column: column + text.chars().count(),
        algebra,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

pub fn parse_element(text: &str, algebra: &FreeGca) -> Result<Element> {
    parse_expression_at(text, algebra, 1, 1)
}
