//! Literal grammars for scalars and series.
//!
//! Scalars: integers, `t`, `+`, `-`, `*`, `^`, parentheses, e.g. `(1+t)`,
//! `2+t`, `4`, `t^-1`. Series additionally use `z`, e.g.
//! `z + (1+t)*z^3 + z^4`. With `--ring fp` the token `t` is rejected and the
//! result is reduced to F_p coefficients.

use ramdyn_core::fp::FpElem;
use ramdyn_core::laurent::LaurentScalar;
use ramdyn_core::series::TruncatedSeries;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Fp,
    Laurent,
}

pub struct SeriesText<'a> {
    src: &'a [u8],
    pos: usize,
    p: u32,
    zprec: usize,
    tprec: u32,
    ring: Ring,
}

type Val = TruncatedSeries<LaurentScalar>;

pub fn parse_series_fp(
    src: &str,
    p: u32,
    zprec: usize,
) -> Result<TruncatedSeries<FpElem>, ParseError> {
    let s = parse(src, p, zprec, 32, Ring::Fp)?;
    s.reduce_series().map_err(|e| ParseError {
        pos: 0,
        msg: format!("coefficients do not lie in F_p: {e}"),
    })
}

pub fn parse_series_laurent(
    src: &str,
    p: u32,
    zprec: usize,
    tprec: u32,
) -> Result<Val, ParseError> {
    parse(src, p, zprec, tprec, Ring::Laurent)
}

fn parse(src: &str, p: u32, zprec: usize, tprec: u32, ring: Ring) -> Result<Val, ParseError> {
    let mut parser = SeriesText {
        src: src.as_bytes(),
        pos: 0,
        p,
        zprec,
        tprec,
        ring,
    };
    let v = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(v)
}

impl<'a> SeriesText<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn constant(&self, c: i64) -> Val {
        TruncatedSeries::from_coeffs(
            self.p,
            self.zprec,
            &[(0, LaurentScalar::from_residue(self.p, c))],
        )
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.bump();
                self.constant(0).sub(&self.term()?)
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.signed_int()?;
            self.power(base, e)
        } else {
            Ok(base)
        }
    }

    fn power(&mut self, base: Val, e: i64) -> Result<Val, ParseError> {
        if e >= 0 {
            let mut acc = self.constant(1);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        // negative exponents make sense only for scalar (degree-0) values
        let is_const = (1..=base.prec()).all(|d| base.coeff(d).certainly_zero() == Some(true));
        if !is_const {
            return Err(self.err("negative exponents are only allowed on scalars"));
        }
        let inv = base
            .coeff(0)
            .inv()
            .map_err(|e| self.err(&format!("cannot invert scalar: {e}")))?;
        let powed = inv.pow((-e) as u128);
        Ok(TruncatedSeries::from_coeffs(
            self.p,
            self.zprec,
            &[(0, powed)],
        ))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let n = self.integer()?;
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let v = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b't') => {
                if self.ring == Ring::Fp {
                    return Err(self.err("t is not allowed with ring fp"));
                }
                self.bump();
                Ok(TruncatedSeries::from_coeffs(
                    self.p,
                    self.zprec,
                    &[(0, LaurentScalar::monomial(self.p, self.tprec, 1, 1))],
                ))
            }
            Some(b'z') => {
                self.bump();
                Ok(TruncatedSeries::identity(self.p, self.zprec))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(n))
            }
            Some(b'-') => {
                self.bump();
                let v = self.atom()?;
                Ok(self.constant(0).sub(&v))
            }
            _ => Err(self.err("expected a number, t, z or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_literals() {
        let s = parse_series_laurent("z + (1+t)*z^3 + z^4", 5, 8, 32).unwrap();
        assert!(s.coeff(1).is_one());
        assert_eq!(
            *s.coeff(3),
            LaurentScalar::from_terms(5, 32, &[(0, 1), (1, 1)])
        );
        assert!(s.coeff(4).is_one());
        assert_eq!(s.coeff(2).certainly_zero(), Some(true));

        let f = parse_series_fp("z+2*z^3+4*z^4+4*z^5", 5, 8).unwrap();
        assert_eq!(f.coeff(3).value(), 2);
        assert_eq!(f.coeff(5).value(), 4);
    }

    #[test]
    fn scalar_shapes() {
        let s = parse_series_laurent("(2+t)^2", 5, 4, 32).unwrap();
        assert_eq!(
            *s.coeff(0),
            LaurentScalar::from_terms(5, 32, &[(0, 4), (1, 4), (2, 1)])
        );
        let neg = parse_series_laurent("t^-1", 5, 4, 32).unwrap();
        assert_eq!(neg.coeff(0).valuation().unwrap(), Some(-1));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_series_fp("z + t*z^3", 5, 8).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_series_laurent("z^-2", 5, 8, 32).is_err());
        assert!(parse_series_laurent("z + ", 5, 8, 32).is_err());
        assert!(parse_series_laurent("(1+t", 5, 8, 32).is_err());
    }
}
