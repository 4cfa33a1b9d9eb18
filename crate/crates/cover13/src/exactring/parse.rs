//! Recursive-descent parser for the ASCII polynomial grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := number ('/' number)? | ident | '(' expr ')'
//! ```
//! `w` denotes ω (or the canonical ξ over F_p) unless the ring declares a
//! variable of that name.  A slash is accepted only between two literals.

use super::field::Scalar;
use super::poly::{MultiPoly, RingRef};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        if self.peek() == Some(b'/') {
            return perr(self.pos, "division is not supported");
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let n = self.integer()?;
        let n: i64 = n.try_into().map_err(|_| Error::Parse { pos: start, msg: "exponent too large".into() })?;
        if n > u32::MAX as i64 {
            return perr(start, "exponent too large");
        }
        if neg {
            base.pow_i(-n).map_err(|_| Error::Parse { pos: start, msg: "negative power of a non-invertible factor".into() })
        } else {
            Ok(base.pow(n as u32))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return perr(start, "expected integer");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let Some(c) = self.peek() else { return perr(self.pos, "unexpected end of input") };
        let field = self.ring.field();
        if c.is_ascii_digit() {
            let n = self.integer()?;
            let mut r = BigRational::from_integer(n);
            if self.peek() == Some(b'/') {
                let save = self.pos;
                self.pos += 1;
                if self.peek().is_some_and(|d| d.is_ascii_digit()) {
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(Error::DivisionByZero);
                    }
                    r /= BigRational::from_integer(d);
                } else {
                    return perr(save, "division is not supported");
                }
            }
            return Ok(MultiPoly::constant(self.ring, field.from_bigrational(&r)?));
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return perr(self.pos, "expected `)`");
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
            if let Ok(i) = self.ring.index(name) {
                return Ok(MultiPoly::var_idx(self.ring, i));
            }
            if name == "w" {
                let xi: Scalar = field.xi()?;
                return Ok(MultiPoly::constant(self.ring, xi));
            }
            return Err(Error::UnknownVariable(name.to_string()));
        }
        perr(self.pos, format!("unexpected character `{}`", c as char))
    }
}

pub fn parse_poly(text: &str, ring: &RingRef) -> Result<MultiPoly> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, ring };
    let e = p.expr()?;
    if p.peek().is_some() {
        return perr(p.pos, "trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{Degree, FieldSpec, Ring};

    #[test]
    fn spec_examples() {
        let r = Ring::standard(FieldSpec::Rationals, &[]).unwrap();
        let p = parse_poly("x0^2 - x1*x2", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.weighted_degree(), Degree::Homogeneous(2));

        let rw = Ring::standard(FieldSpec::RationalsWithOmega, &[]).unwrap();
        assert!(parse_poly("w^2 + w + 1", &rw).unwrap().is_zero());

        let rp = Ring::standard(FieldSpec::PrimeField(31), &[]).unwrap();
        assert_eq!(parse_poly("5^3", &rp).unwrap(), MultiPoly::one(&rp));
        assert_eq!(parse_poly("w", &rp).unwrap(), MultiPoly::from_i64(&rp, 5));
    }

    #[test]
    fn errors() {
        let r = Ring::standard(FieldSpec::Rationals, &[]).unwrap();
        assert_eq!(parse_poly("x0 + q7", &r), Err(Error::UnknownVariable("q7".into())));
        assert!(matches!(parse_poly("w + 1", &r), Err(Error::NoCubeRoot(_))));
        assert!(matches!(parse_poly("x0 / x1", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("y0^-1", &r), Err(Error::Parse { .. })));
        let r11 = Ring::standard(FieldSpec::PrimeField(11), &[]).unwrap();
        assert!(matches!(parse_poly("w", &r11), Err(Error::NoCubeRoot(_))));
    }

    #[test]
    fn literals_and_laurent() {
        let r = Ring::standard(FieldSpec::Rationals, &["lam"]).unwrap();
        let p = parse_poly("3/2*x1^3*x2^-1 - lam*(x0 - 1/3)", &r).unwrap();
        assert_eq!(p.to_string(), "3/2*x1^3*x2^-1 - x0*lam + 1/3*lam");
        assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
    }
}
