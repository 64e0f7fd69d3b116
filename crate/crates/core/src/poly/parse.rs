//! Polynomial text grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! An identifier that is not a ring variable is split greedily into a
//! product of variables, so `xy` reads as `x*y` in a ring with `x` and `y`.

use std::sync::Arc;

use num::bigint::BigInt;

use super::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::field::Field;

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    chars: Vec<char>,
    pos: usize,
}

pub(crate) fn parse_polynomial<F: Field>(
    ring: &Arc<PolyRing<F>>,
    text: &str,
) -> Result<Polynomial<F>> {
    let mut p = Parser {
        ring,
        chars: text.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}`")));
    }
    Ok(e)
}

impl<'a, F: Field> Parser<'a, F> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        self.skip_ws();
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negate = c == '-';
            self.pos += 1;
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() || c == '_' => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent after `^`"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::parse(1, start + 1, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = digits.parse().expect("decimal digits");
                Ok(self.ring.constant(self.ring.field().from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let mut ident = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    ident.push(c);
                    self.pos += 1;
                }
                self.identifier(&ident, start)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// A variable, or a juxtaposition of variables with optional digit exponents
    /// such as `x2y` when neither `x2y` nor `x2` is a variable.
    fn identifier(&self, ident: &str, start: usize) -> Result<Polynomial<F>> {
        if let Some(i) = self.ring.var_index(ident) {
            return Ok(self.ring.var(i));
        }
        let mut acc = self.ring.one();
        let mut rest = ident;
        let mut offset = start;
        while !rest.is_empty() {
            let best = self
                .ring
                .vars()
                .iter()
                .enumerate()
                .filter(|(_, v)| rest.starts_with(v.as_str()))
                .max_by_key(|(_, v)| v.len());
            let Some((i, v)) = best else {
                return Err(Error::parse(
                    1,
                    offset + 1,
                    format!("unknown variable `{rest}`"),
                ));
            };
            rest = &rest[v.len()..];
            offset += v.len();
            let ndigits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let e = if ndigits > 0 {
                let e: u32 = rest[..ndigits]
                    .parse()
                    .map_err(|_| Error::parse(1, offset + 1, "exponent too large"))?;
                rest = &rest[ndigits..];
                offset += ndigits;
                e
            } else {
                1
            };
            acc = &acc * &self.ring.var(i).pow(e);
        }
        Ok(acc)
    }
}
