//! Recursive-descent parser for the ASCII polynomial grammar:
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Integer literals of any length are reduced
//! modulo `p` digit by digit.

use std::sync::Arc;

use super::polynomial::Poly;
use super::ring::PolyRing;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t)? } else { acc.add(&t)? };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(syntax(start, "expected a non-negative integer exponent"));
            }
            let k: u64 = std::str::from_utf8(digits)
                .unwrap()
                .parse()
                .map_err(|_| Error::ExponentOverflow)?;
            if k > u32::MAX as u64 {
                return Err(Error::ExponentOverflow);
            }
            if self.peek() == Some(b'^') {
                return Err(syntax(self.pos, "chained `^` needs parentheses"));
            }
            return base.pow(k);
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.src.get(pos).copied() {
            None => Err(syntax(pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let f = self.ring.char();
                let v = self.digits().iter().fold(0u64, |acc, d| {
                    f.add(f.mul(acc, 10 % f.get()), (d - b'0') as u64 % f.get())
                });
                Ok(Poly::constant(self.ring, v as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[pos..self.pos]).unwrap();
                let i = self
                    .ring
                    .var_index(name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                Ok(Poly::var(self.ring, i))
            }
            Some(c) => Err(syntax(pos, format!("unexpected character `{}`", c as char))),
        }
    }
}

/// Parses one polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(syntax(
            p.pos,
            format!("unexpected trailing `{}`", c as char),
        ));
    }
    Ok(out)
}

/// Parses a comma-separated generator list. Empty input gives no generators.
pub fn parse_poly_list(text: &str, ring: &Arc<PolyRing>) -> Result<Vec<Poly>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        out.push(parse_poly(piece, ring).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: pos + offset,
                msg,
            },
            other => other,
        })?);
        offset += piece.len() + 1;
    }
    Ok(out)
}
