//! Expression grammar for Laurent polynomials and rational functions.
//!
//! Terms like `coef*u1^a*u2^b*t^c` joined by `+`/`-`; coefficients are
//! integers, `num/den` rationals, or pi-polynomials like `(1+2*pi)`;
//! exponents are signed integers. Whitespace-insensitive. `/` between
//! general factors builds rational functions, so `t^3/(1-t^2)` parses.
//! The u-variables may also be spelled with a `b` prefix (`b1..bn`),
//! which the character file format uses.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::coef::Coef;
use crate::context::Context;
use crate::laurent::LaurentPoly;
use crate::ratfunc::RatFunc;
use crate::valuation::Rat;

/// Parse error with byte position in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize), // u_i, 1-based
    T,
    Pi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            message: String::from(message),
        }
    }

    fn tokens(mut self, n: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let start = self.pos;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    self.pos += 1;
                }
                b'+' => {
                    out.push((start, Tok::Plus));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((start, Tok::Minus));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((start, Tok::Star));
                    self.pos += 1;
                }
                b'/' => {
                    out.push((start, Tok::Slash));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((start, Tok::Caret));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((start, Tok::LParen));
                    self.pos += 1;
                }
                b')' => {
                    out.push((start, Tok::RParen));
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let mut end = self.pos;
                    while end < self.src.len() && self.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let s = core::str::from_utf8(&self.src[self.pos..end]).unwrap();
                    let v: BigInt = s.parse().map_err(|_| self.error("bad integer"))?;
                    out.push((start, Tok::Int(v)));
                    self.pos = end;
                }
                b'u' | b'b' => {
                    let mut end = self.pos + 1;
                    while end < self.src.len() && self.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    if end == self.pos + 1 {
                        return Err(self.error("variable needs an index, e.g. u1"));
                    }
                    let s = core::str::from_utf8(&self.src[self.pos + 1..end]).unwrap();
                    let i: usize = s.parse().map_err(|_| self.error("bad variable index"))?;
                    if i < 1 || i > n {
                        return Err(ParseError {
                            pos: start,
                            message: format!("variable index {} out of range 1..={}", i, n),
                        });
                    }
                    out.push((start, Tok::Var(i)));
                    self.pos = end;
                }
                b't' => {
                    out.push((start, Tok::T));
                    self.pos += 1;
                }
                b'p' => {
                    if self.src[self.pos..].starts_with(b"pi") {
                        out.push((start, Tok::Pi));
                        self.pos += 2;
                    } else {
                        return Err(self.error("unexpected character (did you mean pi?)"));
                    }
                }
                _ => return Err(self.error("unexpected character")),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    ctx: Context,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            pos: self.pos(),
            message: String::from(message),
        }
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut neg = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            neg = true;
        } else if matches!(self.peek(), Some(Tok::Plus)) {
            self.bump();
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let f = self.factor()?;
                    acc = acc.div(&f).map_err(|m| ParseError { pos, message: m })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := atom ['^' signed-int]
    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.pos();
            let e = self.signed_int()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| ParseError {
                    pos,
                    message: String::from("exponent too large"),
                })?;
            return base.pow_i64(e).map_err(|m| ParseError { pos, message: m });
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        match self.bump() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            _ => Err(self.error("expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(RatFunc::from_laurent(LaurentPoly::constant(
                self.ctx,
                Coef::from_rat(Rat::from_integer(v)),
            ))),
            Some(Tok::Var(i)) => Ok(RatFunc::from_laurent(LaurentPoly::var_u(self.ctx, i))),
            Some(Tok::T) => Ok(RatFunc::from_laurent(LaurentPoly::var_t(self.ctx))),
            Some(Tok::Pi) => {
                if !self.ctx.uses_pi {
                    return Err(self.error("pi used in a plain (non-pi) context"));
                }
                Ok(RatFunc::from_laurent(LaurentPoly::pi(self.ctx)))
            }
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.error("expected ')'")),
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Parse an expression as a rational function over the given context.
pub fn parse_ratfunc(src: &str, ctx: Context) -> Result<RatFunc, ParseError> {
    let toks = Lexer::new(src).tokens(ctx.n)?;
    let mut p = Parser {
        toks,
        idx: 0,
        ctx,
        end: src.len(),
    };
    let out = p.expr()?;
    if p.idx != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

/// Parse an expression that must be a Laurent polynomial (trivial
/// denominator after normalization).
pub fn parse_laurent(src: &str, ctx: Context) -> Result<LaurentPoly, ParseError> {
    let f = parse_ratfunc(src, ctx)?;
    match f.as_laurent() {
        Some(p) => Ok(p.clone()),
        None => Err(ParseError {
            pos: 0,
            message: String::from("expression is not a Laurent polynomial"),
        }),
    }
}
