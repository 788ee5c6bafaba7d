//! Text syntax for rational functions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power (('*' | '/') power)*
//! power  := atom ['^' uint]
//! atom   := number ['i'] | 'i' | 'x' uint | '(' expr ')' | '-' atom
//! ```
//!
//! Variables are `x1, x2, ...`; coefficients are integers, with `i` as the
//! imaginary unit, so `3+4i` and `(1/2)*x1^2` are valid. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::RationalField;
use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { column: self.pos + 1, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<RationalField> {
        let mut acc = if self.eat(b'-') { -self.term()? } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalField> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.power()?;
                if d.is_zero() {
                    self.pos = at;
                    return Err(self.err("division by zero"));
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RationalField> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self
                .digits()
                .ok_or_else(|| self.err("expected exponent"))?
                .parse::<u32>()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalField> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(RationalField::constant(GaussianRational::i()))
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self
                    .digits()
                    .ok_or_else(|| self.err("expected variable index after 'x'"))?
                    .parse::<usize>()
                    .map_err(|_| self.err("variable index too large"))?;
                if idx == 0 {
                    return Err(self.err("variables are numbered from x1"));
                }
                Ok(RationalField::var(idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().unwrap().parse().unwrap();
                let r = BigRational::from_integer(n);
                // `3i` is an imaginary literal; no whitespace allowed before the `i`
                if self.src.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Ok(RationalField::constant(GaussianRational::new(BigRational::zero(), r)));
                }
                Ok(RationalField::constant(GaussianRational::real(r)))
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a rational function in `x1..xm`.
pub fn parse_field(text: &str) -> Result<RationalField> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a constant such as `-3/4` or `1+2i`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let f = parse_field(text)?;
    f.as_constant().ok_or(Error::Parse { column: 1, message: format!("'{text}' is not a constant") })
}

impl std::str::FromStr for RationalField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_field(s)
    }
}

impl std::str::FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}
