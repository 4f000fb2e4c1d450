//! Surface syntax for Gaussian integers and polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*        juxtaposition multiplies
//! factor := atom ['^' digits]
//! atom   := digits | 'i' | 'x' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Examples: `3-4i`, `x^2 + (1+1i)`, `3x^2+(1+i)`,
//! `x^2(x-3)`, `(2+2i)x`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::{GIPolynomial, GaussianInt};

pub fn parse_poly(src: &str) -> Result<GIPolynomial> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return p.fail("empty input");
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}

/// Parse `a+bi`, `a-bi`, `3`, `-i`, `2i`, … (any expression without `x`).
pub fn parse_gaussian(src: &str) -> Result<GaussianInt> {
    let p = parse_poly(src)?;
    if p.coeffs().len() > 1 {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a Gaussian integer, found a polynomial".into(),
        });
    }
    Ok(p.coeff(0))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<GIPolynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GIPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || c == b'i' || c == b'x' || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GIPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return self.fail("expected an exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= 4096 => e,
                _ => return self.fail("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GIPolynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("ascii digits");
                Ok(GIPolynomial::constant(GaussianInt::new(n, BigInt::from(0))))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(GIPolynomial::constant(GaussianInt::i()))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(GIPolynomial::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.fail("unexpected character"),
            None => self.fail("unexpected end of input"),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}
