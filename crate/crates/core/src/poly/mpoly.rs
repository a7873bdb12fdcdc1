use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::UPoly;

/// The variable `q[i][j]`. Ordered lexicographically by `(i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub i: u32,
    pub j: u32,
}

impl VarId {
    /// Panics unless both indices are positive.
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "variable indices are positive, got q[{i}][{j}]");
        Self { i, j }
    }

    pub fn try_new(i: u32, j: u32) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::Invalid(format!("q[{i}][{j}]: indices must be positive")));
        }
        Ok(Self { i, j })
    }

    /// `q[i][j] -> q[j][i]`
    pub fn transpose(self) -> Self {
        Self { i: self.j, j: self.i }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[{}][{}]", self.i, self.j)
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A power product of variables, kept sorted strictly by `VarId` with
/// positive exponents. The empty product is the monomial 1.
///
/// The derived `Ord` compares the factor lists lexicographically; it is
/// the canonical print order (so `1` sorts first) but it is not
/// compatible with multiplication. Division uses [`Monomial::lex_cmp`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Self(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary (possibly repeated, unsorted)
    /// factors; zero exponents are dropped.
    pub fn from_factors<I: IntoIterator<Item = (VarId, u32)>>(factors: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                Ordering::Equal => {
                    out.push((a[x].0, a[x].1 + b[y].1));
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        Monomial(out)
    }

    pub fn mul_var(&self, v: VarId) -> Monomial {
        self.mul(&Monomial::var(v))
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut y = 0;
        for &(v, e) in &self.0 {
            if y < other.0.len() && other.0[y].0 < v {
                return None;
            }
            if y < other.0.len() && other.0[y].0 == v {
                let d = other.0[y].1;
                y += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        if y < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Variables transposed; re-sorted.
    pub fn conj(&self) -> Monomial {
        let mut f: Vec<_> = self.0.iter().map(|&(v, e)| (v.transpose(), e)).collect();
        f.sort_unstable_by_key(|&(v, _)| v);
        Monomial(f)
    }

    /// Pure lexicographic term order with `q[1][1] > q[1][2] > … `.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            if a.0 != b.0 {
                // whichever carries the smaller variable is larger
                return b.0.cmp(&a.0);
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    pub fn eval(&self, point: &BTreeMap<VarId, GaussianRational>) -> Result<GaussianRational> {
        let mut acc = GaussianRational::one();
        for &(v, e) in &self.0 {
            let x = point.get(&v).ok_or(Error::MissingAssignment(v))?;
            acc = &acc * &x.pow(e);
        }
        Ok(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse polynomial in the `q[i][j]` with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

/// Key wrapper ordering monomials by [`Monomial::lex_cmp`].
#[derive(Clone, PartialEq, Eq)]
struct LexKey(Monomial);

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.lex_cmp(&other.0)
    }
}

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(v))
    }

    /// `q[i][j]`; panics on a zero index.
    pub fn q(i: u32, j: u32) -> Self {
        Self::var(VarId::new(i, j))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(GaussianRational::one(), m)
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&Monomial::one())
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// The single monomial of a one-term polynomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The q-conjugate: `q[i][j] -> q[j][i]`, coefficients conjugated.
    pub fn conj(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect() }
    }

    pub fn eval(&self, point: &BTreeMap<VarId, GaussianRational>) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            acc += &(c * &m.eval(point)?);
        }
        Ok(acc)
    }

    /// Renames variables through `map`, merging terms that collide.
    pub fn substitute_vars(&self, map: &BTreeMap<VarId, VarId>) -> Result<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut f = Vec::with_capacity(m.factors().len());
            for &(v, e) in m.factors() {
                f.push((*map.get(&v).ok_or(Error::MissingAssignment(v))?, e));
            }
            out.add_term(Monomial::from_factors(f), c);
        }
        Ok(out)
    }

    /// Image under `q[i][j] -> q` for every variable. Fails when a
    /// coefficient has a nonzero imaginary part.
    pub fn specialize_uniform(&self) -> Result<UPoly> {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            if !c.is_real() {
                return Err(Error::NonRealCoefficient);
            }
            coeffs[m.total_degree() as usize] += &c.re;
        }
        Ok(UPoly::from_coeffs(coeffs))
    }

    /// Exact quotient `self / d`.
    ///
    /// Runs the division algorithm in pure lex order and fails with
    /// `NotDivisible` as soon as a leading term cannot be cancelled.
    pub fn exact_div(&self, d: &MPoly) -> Result<MPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if let Some((m, c)) = d.single_term() {
            let mut out = BTreeMap::new();
            for (k, x) in &self.terms {
                out.insert(k.div(m).ok_or(Error::NotDivisible)?, x / c);
            }
            return Ok(MPoly { terms: out });
        }
        let mut divisor: Vec<(Monomial, GaussianRational)> =
            d.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        divisor.sort_by(|a, b| b.0.lex_cmp(&a.0));
        let (lead_m, lead_c) = divisor[0].clone();
        let lead_inv = lead_c.inv().expect("nonzero leading coefficient");

        let mut rem: BTreeMap<LexKey, GaussianRational> =
            self.terms.iter().map(|(m, c)| (LexKey(m.clone()), c.clone())).collect();
        let mut quot = MPoly::zero();
        while let Some((top, c)) = rem.pop_last() {
            let qm = top.0.div(&lead_m).ok_or(Error::NotDivisible)?;
            let qc = &c * &lead_inv;
            for (m, x) in &divisor[1..] {
                let key = LexKey(m.mul(&qm));
                let delta = x * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    fn single_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

impl From<GaussianRational> for MPoly {
    fn from(c: GaussianRational) -> Self {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> Self {
        MPoly::constant(GaussianRational::from(n))
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut out = MPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        let mut acc = MPoly::zero();
        for p in iter {
            for (m, c) in p.terms {
                acc.add_term(m, &c);
            }
        }
        acc
    }
}

impl std::iter::Product for MPoly {
    fn product<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::one(), |a, b| &a * &b)
    }
}
