//! Dense polynomials over ℤ. Internal kernel for the fraction-free
//! univariate routines, where rational coefficients would spend most of
//! their time in gcds of denominators that are always 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct IntPoly(pub(crate) Vec<BigInt>);

impl IntPoly {
    pub(crate) fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly(c)
    }

    pub(crate) fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub(crate) fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub(crate) fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut x = self.0.get(k).cloned().unwrap_or_default();
            if let Some(y) = o.0.get(k) {
                x += y;
            }
            c.push(x);
        }
        IntPoly::new(c)
    }

    pub(crate) fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut x = self.0.get(k).cloned().unwrap_or_default();
            if let Some(y) = o.0.get(k) {
                x -= y;
            }
            c.push(x);
        }
        IntPoly::new(c)
    }

    pub(crate) fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.0.iter().enumerate() {
                if !y.is_zero() {
                    c[a + b] += x * y;
                }
            }
        }
        IntPoly::new(c)
    }

    /// `self / d` assuming the quotient lies in ℤ[q].
    pub(crate) fn exact_div(&self, d: &IntPoly) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dd = d.0.len() - 1;
        if self.0.len() - 1 < dd {
            return Err(Error::NotDivisible);
        }
        let mut r = self.0.clone();
        let lead = d.lead();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(lead);
            if !rem.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (t, y) in d.0.iter().enumerate() {
                if !y.is_zero() {
                    r[k + t] -= &qc * y;
                }
            }
            q[k] = qc;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(IntPoly::new(q))
    }

    pub(crate) fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Primitive part with a positive leading coefficient.
    pub(crate) fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly(self.0.iter().map(|x| x / &g).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.0.len() - 1;
        let lead = d.lead();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.lead().clone();
            let shift = rd - dd;
            let mut c: Vec<BigInt> = r.0.iter().map(|x| x * lead).collect();
            for (t, y) in d.0.iter().enumerate() {
                c[shift + t] -= &top * y;
            }
            r = IntPoly::new(c);
        }
        r
    }

    /// Primitive gcd (positive leading coefficient) by the primitive
    /// polynomial remainder sequence.
    pub(crate) fn gcd(&self, o: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// `Σ |c_k|`
    pub(crate) fn norm1(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).sum()
    }

    /// The `d`-th cyclotomic polynomial, `(q^d − 1) / ∏_{e | d, e < d} Φ_e`.
    pub(crate) fn cyclotomic(d: usize) -> IntPoly {
        assert!(d > 0, "cyclotomic index must be positive");
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = -BigInt::one();
        c[d] = BigInt::one();
        let mut p = IntPoly(c);
        for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
            p = p.exact_div(&IntPoly::cyclotomic(e)).expect("Φ_e divides q^d − 1");
        }
        p
    }

    /// Divides out `f` as often as it divides, at most `cap` times.
    pub(crate) fn strip_factor(&self, f: &IntPoly, cap: u32) -> (u32, IntPoly) {
        let mut rest = self.clone();
        let mut e = 0;
        while e < cap {
            match rest.exact_div(f) {
                Ok(q) => {
                    rest = q;
                    e += 1;
                }
                Err(_) => break,
            }
        }
        (e, rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn exact_division_and_failure() {
        let a = ip(&[1, 0, -1]); // 1 - q^2
        let b = ip(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), ip(&[1, -1]));
        assert_eq!(a.exact_div(&ip(&[2, 1])), Err(Error::NotDivisible));
        assert_eq!(a.exact_div(&IntPoly::zero()), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(IntPoly::cyclotomic(1), ip(&[-1, 1]));
        assert_eq!(IntPoly::cyclotomic(6), ip(&[1, -1, 1]));
        assert_eq!(IntPoly::cyclotomic(12), ip(&[1, 0, -1, 0, 1]));
        let x = ip(&[1, 0, -1]).mul(&ip(&[1, 0, -1]));
        let (e, rest) = x.strip_factor(&IntPoly::cyclotomic(2), 5);
        assert_eq!(e, 2);
        assert_eq!(rest, ip(&[1, -1]).mul(&ip(&[1, -1])));
        assert_eq!(x.strip_factor(&IntPoly::cyclotomic(2), 1).0, 1);
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let a = ip(&[1, 0, -1]).mul(&ip(&[1, 0, -1]));
        let b = ip(&[1, 0, 0, 0, 0, 0, -1]);
        assert_eq!(a.gcd(&b), ip(&[-1, 0, 1]));
        assert_eq!(ip(&[3, 6]).gcd(&ip(&[2])), ip(&[1]));
    }
}
