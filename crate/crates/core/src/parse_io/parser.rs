//! Recursive-descent parser for the polynomial grammar. Never panics on any
//! input string; every error carries a byte offset.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{FieldElem, Rational};
use crate::poly::MPoly;

use super::{ParseContext, ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token with its starting byte offset; `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.bytes[self.pos];
        let tok = match b {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.bytes[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Int(s.parse().unwrap())
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut end = self.pos;
                while end < self.bytes.len()
                    && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
                {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.bytes[self.pos..end])
                    .map_err(|_| ParseError {
                        position: start,
                        kind: ParseErrorKind::Syntax("ASCII identifier".into()),
                    })?
                    .to_string();
                self.pos = end;
                Tok::Ident(s)
            }
            _ => {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::Syntax("token".into()),
                })
            }
        };
        Ok(Some((start, tok)))
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    ctx: &'a ParseContext,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.idx)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expect_err(&self, what: &str) -> ParseError {
        ParseError { position: self.here(), kind: ParseErrorKind::Syntax(what.into()) }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let negate = matches!(self.peek(), Some((_, Tok::Minus)));
        if negate {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some((_, Tok::Plus)) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some((_, Tok::Minus)) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some((_, Tok::Star)) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some((_, Tok::Slash)) => {
                    self.bump();
                    let pos = self.here();
                    match self.bump() {
                        Some((_, Tok::Int(n))) => {
                            if n.is_zero() {
                                return Err(ParseError {
                                    position: pos,
                                    kind: ParseErrorKind::BadDivisor,
                                });
                            }
                            acc = acc.mul_scalar(&Rational::new(BigInt::from(1), n));
                        }
                        _ => {
                            return Err(ParseError {
                                position: pos,
                                kind: ParseErrorKind::BadDivisor,
                            })
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let nvars = self.ctx.nvars();
        let tower = self.ctx.tower();
        match self.bump() {
            Some((_, Tok::Int(n))) => Ok(MPoly::constant(
                nvars,
                FieldElem::from_rational(tower, Rational::from_integer(n)),
            )),
            Some((pos, Tok::Ident(name))) => {
                if let Some(i) = self.ctx.var_index(&name) {
                    let mut p = MPoly::var(nvars, i, tower);
                    if matches!(self.peek(), Some((_, Tok::Caret))) {
                        self.bump();
                        let epos = self.here();
                        match self.bump() {
                            Some((_, Tok::Int(e))) => {
                                let e: u32 = e.try_into().map_err(|_| ParseError {
                                    position: epos,
                                    kind: ParseErrorKind::Syntax("small exponent".into()),
                                })?;
                                p = p.pow(e);
                            }
                            Some((p2, Tok::Minus)) => {
                                return Err(ParseError {
                                    position: p2,
                                    kind: ParseErrorKind::NegativeExponent,
                                })
                            }
                            _ => {
                                return Err(ParseError {
                                    position: epos,
                                    kind: ParseErrorKind::Syntax("integer exponent".into()),
                                })
                            }
                        }
                    }
                    Ok(p)
                } else if let Some(s) = self.ctx.surd_index(&name) {
                    Ok(MPoly::constant(nvars, FieldElem::basis(tower, s)))
                } else {
                    Err(ParseError { position: pos, kind: ParseErrorKind::UnknownSymbol(name) })
                }
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => Err(self.expect_err("closing parenthesis")),
                }
            }
            _ => Err(self.expect_err("integer, symbol, or parenthesized expression")),
        }
    }
}

/// Parse a polynomial over the context's variables and tower.
pub fn parse_poly(text: &str, ctx: &ParseContext) -> Result<MPoly, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseError { position: 0, kind: ParseErrorKind::EmptyInput });
    }
    let mut lexer = Lexer::new(text);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next()? {
        toks.push(t);
    }
    let mut parser = Parser { toks, idx: 0, ctx, end: text.len() };
    let p = parser.expr()?;
    if parser.idx != parser.toks.len() {
        return Err(parser.expect_err("end of input"));
    }
    Ok(p)
}

/// Parse a constant expression (no variables allowed) to a field element.
pub fn parse_constant(text: &str, ctx: &ParseContext) -> Result<FieldElem, ParseError> {
    let p = parse_poly(text, ctx)?;
    if !p.is_constant() {
        return Err(ParseError {
            position: 0,
            kind: ParseErrorKind::Syntax("constant expression without variables".into()),
        });
    }
    Ok(p.constant_coeff().cloned().unwrap_or_else(|| FieldElem::zero(ctx.tower())))
}
