//! Recursive-descent reader for the polynomial text grammar:
//! integers, `a/b` rationals, variables, `+ - * ^`, parentheses.
//! Division is only accepted by a nonzero constant.

use alloc::format;
use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::Vars;
use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::{Error, Result};

pub(crate) struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Looks ahead for `tok` ignoring whitespace between its characters.
    pub(crate) fn looking_at(&mut self, tok: &str) -> bool {
        self.skip_ws();
        let mut p = self.pos;
        for &b in tok.as_bytes() {
            while p < self.src.len() && self.src[p].is_ascii_whitespace() {
                p += 1;
            }
            if self.src.get(p) != Some(&b) {
                return false;
            }
            p += 1;
        }
        true
    }

    pub(crate) fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(b) if b == c => Ok(()),
            Some(b) => Err(Error::parse(
                self.pos - 1,
                format!("expected '{}', found '{}'", c as char, b as char),
            )),
            None => Err(Error::parse(self.pos, format!("expected '{}'", c as char))),
        }
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected '{}'", c as char),
            )),
        }
    }

    pub(crate) fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn parse_exponent(&mut self) -> Result<u32> {
        let at = self.pos;
        let e = self.parse_uint()?;
        u32::try_from(e).map_err(|_| Error::parse(at, "exponent too large"))
    }

    pub(crate) fn parse_polynomial(mut self, vars: Vars) -> Result<Polynomial> {
        let p = self.expr(vars)?;
        self.finish()?;
        Ok(p)
    }

    pub(crate) fn expr(&mut self, vars: Vars) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.bump();
                -self.term(vars)?
            }
            Some(b'+') => {
                self.bump();
                self.term(vars)?
            }
            _ => self.term(vars)?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = &acc + &self.term(vars)?;
                }
                Some(b'-') => {
                    self.bump();
                    acc = &acc - &self.term(vars)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, vars: Vars) -> Result<Polynomial> {
        let mut acc = self.factor(vars)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = &acc * &self.factor(vars)?;
                }
                Some(b'/') => {
                    self.bump();
                    let at = self.pos;
                    let d = self.factor(vars)?;
                    if !d.is_constant() {
                        return Err(Error::parse(at, "division by a non-constant"));
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    pub(crate) fn factor(&mut self, vars: Vars) -> Result<Polynomial> {
        let base = self.atom(vars)?;
        if self.peek() == Some(b'^') && !self.looking_at("^d(") {
            self.bump();
            let e = self.parse_exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, vars: Vars) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let p = self.expr(vars)?;
                self.expect(b')')?;
                Ok(p)
            }
            Some(b'-') => {
                self.bump();
                Ok(-self.factor(vars)?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                Ok(Polynomial::constant(vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                self.bump();
                match vars.index_of(c as char) {
                    Some(i) => Ok(Polynomial::var(vars, i)),
                    None => Err(Error::parse(
                        at,
                        format!("unknown variable '{}' (ring variables: {vars})", c as char),
                    )),
                }
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected '{}'", c as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn parse(s: &str) -> Result<Polynomial> {
        Polynomial::parse(s, Vars::new("xyz").unwrap())
    }

    #[test]
    fn grammar() {
        let p = parse(" 3/4 * x ^ 2 - (y+1)*(y-1) ").unwrap();
        assert_eq!(p.to_string(), "3/4*x^2 - y^2 + 1");
        assert_eq!(parse("-x*-y").unwrap(), parse("x*y").unwrap());
        assert_eq!(parse("x/2").unwrap().terms().next().unwrap().1, &rat(1, 2));
        assert!(matches!(parse("x/y"), Err(Error::Parse { .. })));
        assert!(matches!(parse("x +"), Err(Error::Parse { .. })));
        assert!(matches!(parse("w"), Err(Error::Parse { .. })));
        assert!(matches!(parse("(x"), Err(Error::Parse { .. })));
        assert_eq!(parse("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "x^3*y*z - 2/7*y + 5", "-x - y", "1/2*x*z^4"] {
            let p = parse(s).unwrap();
            assert_eq!(parse(&p.to_string()).unwrap(), p);
        }
    }
}
