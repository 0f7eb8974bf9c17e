//! Expression parser for ring elements.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-'* power`, `power := atom ('^' uint)?`, `atom := uint | ident |
//! '(' expr ')'`. Division must be exact in the target ring. Exponents are
//! capped so untrusted input cannot build huge polynomials.

use super::{Elem, Ring};
use crate::error::{Error, Result};
use num::bigint::BigInt;

const MAX_EXPONENT: u32 = 4096;

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
}

pub fn parse_elem(ring: &Ring, text: &str) -> Result<Elem> {
    let mut p = Parser {
        ring,
        chars: text.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    let e = p.expr(0)?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected character {:?} at position {}",
            p.chars[p.pos], p.pos
        )));
    }
    Ok(e)
}

const MAX_DEPTH: usize = 64;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self, depth: usize) -> Result<Elem> {
        if depth > MAX_DEPTH {
            return Err(Error::Parse("expression nests too deeply".into()));
        }
        let mut acc = self.term(depth)?;
        loop {
            if self.eat('+') {
                let t = self.term(depth)?;
                acc = self.ring.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term(depth)?;
                acc = self.ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Elem> {
        let mut acc = self.unary(depth)?;
        loop {
            if self.eat('*') {
                let u = self.unary(depth)?;
                acc = self.ring.mul(&acc, &u);
            } else if self.eat('/') {
                let u = self.unary(depth)?;
                acc = self
                    .ring
                    .try_div(&acc, &u)
                    .ok_or_else(|| Error::Parse("division is not exact in this ring".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, depth: usize) -> Result<Elem> {
        if self.eat('-') {
            let e = self.unary(depth)?;
            return Ok(self.ring.neg(&e));
        }
        self.power(depth)
    }

    fn power(&mut self, depth: usize) -> Result<Elem> {
        let base = self.atom(depth)?;
        if self.eat('^') {
            let n = self.uint()?;
            if n > MAX_EXPONENT {
                return Err(Error::Parse(format!("exponent exceeds {MAX_EXPONENT}")));
            }
            return Ok(self.ring.pow(&base, n));
        }
        Ok(base)
    }

    fn atom(&mut self, depth: usize) -> Result<Elem> {
        match self.peek() {
            Some('(') => {
                self.eat('(');
                let e = self.expr(depth + 1)?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                self.skip_ws();
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| Error::Parse("bad integer literal".into()))?;
                Ok(self.ring.from_bigint(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.skip_ws();
                match self.ring.var_name() {
                    Some(v) if v == name => self.ring.var_elem(),
                    _ => Err(Error::Parse(format!("unknown symbol {name:?}"))),
                }
            }
            Some(c) => Err(Error::Parse(format!(
                "unexpected character {c:?} at position {}",
                self.pos
            ))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected an integer exponent".into()));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        self.skip_ws();
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("exponent exceeds {MAX_EXPONENT}")))
    }
}
