//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | scalar | generator | generator "'" | '(' expr ')'
//! ```
//!
//! Scalars are decimal literals or the imaginary unit `i`. The leading unary
//! minus is an extension that lets printed polynomials re-parse.

use std::collections::BTreeMap;

use super::poly::NCPolynomial;
use super::word::{Family, Generator};
use crate::error::ParseError;
use crate::C64;

/// Declared generator names.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    names: BTreeMap<String, Generator>,
}

impl Symbols {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `a1..a{num_a}` and `b1..b{num_b}`.
    pub fn standard(num_a: u32, num_b: u32) -> Self {
        let mut s = Self::new();
        for i in 1..=num_a {
            s.declare(format!("a{i}"), Generator::a(i));
        }
        for i in 1..=num_b {
            s.declare(format!("b{i}"), Generator::b(i));
        }
        s
    }

    pub fn declare(&mut self, name: impl Into<String>, generator: Generator) -> &mut Self {
        let name = name.into();
        assert!(name != "i", "`i` is reserved for the imaginary unit");
        self.names.insert(name, generator);
        self
    }

    pub fn with(mut self, name: impl Into<String>, generator: Generator) -> Self {
        self.declare(name, generator);
        self
    }

    /// Declares every `a<k>` / `b<k>` identifier that occurs in `text`.
    /// Handy for scenario files where the generators are implicit.
    pub fn infer(text: &str) -> Self {
        let mut s = Self::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos].is_ascii_alphabetic() || bytes[pos] == b'_' {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                let ident = &text[start..pos];
                if let Some(g) = standard_name(ident) {
                    s.declare(ident, g);
                }
            } else {
                pos += 1;
            }
        }
        s
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.names.get(name).copied()
    }
}

fn standard_name(ident: &str) -> Option<Generator> {
    let family = match ident.as_bytes().first()? {
        b'a' => Family::A,
        b'b' => Family::B,
        _ => return None,
    };
    let digits = &ident[1..];
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    let index: u32 = digits.parse().ok()?;
    Some(Generator { family, index })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Prime,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'\'' => Tok::Prime,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
                    pos += 1;
                }
                if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
                    let mut look = pos + 1;
                    if look < bytes.len() && (bytes[look] == b'+' || bytes[look] == b'-') {
                        look += 1;
                    }
                    if look < bytes.len() && bytes[look].is_ascii_digit() {
                        pos = look;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                    }
                }
                let lit = &text[start..pos];
                let value = lit.parse::<f64>().map_err(|_| ParseError::Syntax {
                    position: start,
                    message: format!("malformed number `{lit}`"),
                })?;
                out.push((start, Tok::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                out.push((start, Tok::Ident(text[start..pos].to_string())));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: pos,
                    message: format!(
                        "unexpected character `{}`",
                        text[pos..].chars().next().unwrap()
                    ),
                })
            }
        };
        out.push((pos, tok));
        pos += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    symbols: &'a Symbols,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<NCPolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.multiply(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPolynomial, ParseError> {
        let position = self.offset();
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(NCPolynomial::constant(C64::new(v, 0.0)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(NCPolynomial::constant(C64::new(0.0, 1.0)));
                }
                let g = self
                    .symbols
                    .lookup(&name)
                    .ok_or(ParseError::UnknownSymbol { name, position })?;
                let mut letter = g.letter();
                if let Some(Tok::Prime) = self.peek() {
                    self.pos += 1;
                    letter = letter.star();
                }
                Ok(NCPolynomial::letter(letter))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.syntax("expected `)`")),
                }
            }
            Some(t) => Err(self.syntax(format!("unexpected token {t:?}"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses `text` into its canonical polynomial.
pub fn parse_expression(text: &str, symbols: &Symbols) -> Result<NCPolynomial, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        symbols,
    };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.syntax("trailing input"));
    }
    Ok(p)
}
