//! Canonical text form of polynomials.
//!
//! Terms are printed in canonical monomial order and joined by ` + ` or
//! ` - `; a variable prints as `q[i][j]`, a power as `^e`. Coefficients
//! equal to one are omitted, complex coefficients with both parts nonzero
//! are parenthesized: `1 - q[1][2]*q[2][1]`, `(1/2+i)*q[1][3]^2`.
//!
//! The parser accepts that output plus ordinary arithmetic (`*`, `^`,
//! parentheses, unary minus, `i`, the Unicode minus sign), which is
//! enough for hand-written golden values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::gaussian::GaussianRational;
use crate::poly::{MPoly, Monomial, VarId};

fn coeff_prefix(c: &GaussianRational) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else if !c.re.is_zero() && !c.im.is_zero() {
        format!("({c})*")
    } else {
        format!("{c}*")
    }
}

fn term_string(m: &Monomial, c: &GaussianRational) -> String {
    if m.is_one() {
        c.to_string()
    } else {
        format!("{}{}", coeff_prefix(c), m)
    }
}

pub(crate) fn join_terms<I: IntoIterator<Item = String>>(terms: I) -> String {
    let mut out = String::new();
    for (k, t) in terms.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.terms().map(|(m, c)| term_string(m, c))))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::Parse(format!("{msg} at byte {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", b as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn small(&mut self) -> Result<u32, Error> {
        let n = self.integer()?;
        u32::try_from(n).or_else(|_| self.err("integer too large"))
    }

    fn expr(&mut self) -> Result<MPoly, Error> {
        let mut acc = MPoly::zero();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MPoly, Error> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(MPoly::constant(GaussianRational::i()))
            }
            Some(b'q') => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.small()?;
                self.expect(b']')?;
                self.expect(b'[')?;
                let j = self.small()?;
                self.expect(b']')?;
                Ok(MPoly::var(VarId::try_new(i, j)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') { self.integer()? } else { BigInt::one() };
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                Ok(MPoly::constant(GaussianRational::real(BigRational::new(num, den))))
            }
            _ => self.err("unexpected input"),
        }
    }
}

impl FromStr for MPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let normalized = s.replace('\u{2212}', "-");
        let mut p = Parser { s: normalized.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}

pub(crate) fn fmt_signed_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Text of a univariate polynomial in `q`, ascending degree.
pub(crate) fn upoly_string(coeffs: &[BigRational]) -> String {
    join_terms(coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(d, c)| {
        let mono = match d {
            0 => return fmt_signed_rational(c),
            1 => "q".to_string(),
            _ => format!("q^{d}"),
        };
        if c.is_one() {
            mono
        } else if (-c.clone()).is_one() {
            format!("-{mono}")
        } else {
            format!("{}*{mono}", fmt_signed_rational(c))
        }
    }))
}
