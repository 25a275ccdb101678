//! Parser for polynomial-style literals.
//!
//! Grammar (whitespace insignificant, juxtaposition not allowed):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := ident | uint | uint '/' uint | '(' expr ')' | '-' atom
//! ```
//!
//! `a/b` rational literals are only legal in characteristic 0. The same
//! parser serves base-ring polynomials and DG-algebra elements through the
//! [`ExprContext`] trait.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{big_ratio, Coeff, FieldKind};

/// A value universe the expression grammar can be evaluated into.
pub trait ExprContext {
    type Elt: Clone;

    fn from_decimal(&self, digits: &str) -> Result<Self::Elt>;
    /// `a/b`; implementations must reject it outside characteristic 0.
    fn from_ratio(&self, num: &str, den: &str) -> Result<Self::Elt>;
    fn symbol(&self, name: &str) -> Result<Self::Elt>;
    fn add(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;
    fn sub(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;
    fn neg(&self, a: Self::Elt) -> Self::Elt;
    fn mul(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;
    fn pow(&self, a: Self::Elt, e: u32) -> Self::Elt;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                let t = Tok::Int(text[i..j].to_string());
                i = j;
                toks.push((start, t));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let t = Tok::Ident(text[i..j].to_string());
                i = j;
                toks.push((start, t));
                continue;
            }
            _ => return Err(err(i, format!("unexpected character `{c}`"))),
        };
        toks.push((start, tok));
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a, C: ExprContext> {
    ctx: &'a C,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a, C: ExprContext> Parser<'a, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let off = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(err(off, format!("expected {want:?}, found {t:?}"))),
            None => Err(err(off, format!("expected {want:?}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<C::Elt> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.ctx.neg(acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ctx.add(acc, t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ctx.sub(acc, t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<C::Elt> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = self.ctx.mul(acc, f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<C::Elt> {
        let a = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Some(Tok::Int(d)) => {
                    let e: u32 = d
                        .parse()
                        .map_err(|_| err(off, format!("exponent `{d}` out of range")))?;
                    Ok(self.ctx.pow(a, e))
                }
                _ => Err(err(off, "expected a nonnegative integer exponent after `^`")),
            }
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<C::Elt> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Ident(name)) => self
                .ctx
                .symbol(&name)
                .map_err(|e| err(off, e.to_string())),
            Some(Tok::Int(d)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let off2 = self.offset();
                    match self.bump() {
                        Some(Tok::Int(den)) => self
                            .ctx
                            .from_ratio(&d, &den)
                            .map_err(|e| err(off2, e.to_string())),
                        _ => Err(err(off2, "expected an integer denominator after `/`")),
                    }
                } else {
                    self.ctx.from_decimal(&d).map_err(|e| err(off, e.to_string()))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Minus) => {
                let a = self.atom()?;
                Ok(self.ctx.neg(a))
            }
            Some(t) => Err(err(off, format!("unexpected {t:?}"))),
            None => Err(err(off, "unexpected end of input")),
        }
    }
}

/// Parse `text` in context `ctx`; the whole string must be consumed.
pub fn parse_expr<C: ExprContext>(text: &str, ctx: &C) -> Result<C::Elt> {
    let toks = lex(text)?;
    let mut p = Parser { ctx, toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "trailing input after expression"));
    }
    Ok(e)
}

/// Context for plain base-ring polynomials.
pub struct PolyContext<'a, K> {
    pub vars: &'a [String],
    pub kind: FieldKind,
    _k: std::marker::PhantomData<K>,
}

impl<'a, K> PolyContext<'a, K> {
    pub fn new(vars: &'a [String], kind: FieldKind) -> Self {
        PolyContext { vars, kind, _k: std::marker::PhantomData }
    }
}

impl<K: Coeff> ExprContext for PolyContext<'_, K> {
    type Elt = Poly<K>;

    fn from_decimal(&self, digits: &str) -> Result<Poly<K>> {
        Ok(Poly::constant(self.vars.len(), K::from_decimal(digits, &self.kind)?))
    }

    fn from_ratio(&self, num: &str, den: &str) -> Result<Poly<K>> {
        if self.kind != FieldKind::Rationals {
            return Err(Error::Parse {
                offset: 0,
                message: "rational literals `a/b` are only allowed in characteristic 0".into(),
            });
        }
        big_ratio(num, den)?; // validates the denominator
        let a = K::from_decimal(num, &self.kind)?;
        let b = K::from_decimal(den, &self.kind)?;
        let inv = b
            .try_inv()
            .ok_or_else(|| Error::Parse { offset: 0, message: "zero denominator".into() })?;
        Ok(Poly::constant(self.vars.len(), a * inv))
    }

    fn symbol(&self, name: &str) -> Result<Poly<K>> {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => Ok(Poly::var(self.vars.len(), i)),
            None => Err(Error::Parse {
                offset: 0,
                message: format!("unknown variable `{name}`"),
            }),
        }
    }

    fn add(&self, a: Poly<K>, b: Poly<K>) -> Poly<K> {
        a.add(&b)
    }
    fn sub(&self, a: Poly<K>, b: Poly<K>) -> Poly<K> {
        a.sub(&b)
    }
    fn neg(&self, a: Poly<K>) -> Poly<K> {
        a.neg()
    }
    fn mul(&self, a: Poly<K>, b: Poly<K>) -> Poly<K> {
        a.mul(&b)
    }
    fn pow(&self, a: Poly<K>, e: u32) -> Poly<K> {
        a.pow(e)
    }
}

/// Parse a polynomial literal over the named variables.
pub fn parse_poly<K: Coeff>(text: &str, vars: &[String], kind: FieldKind) -> Result<Poly<K>> {
    parse_expr(text, &PolyContext::<K>::new(vars, kind))
}
