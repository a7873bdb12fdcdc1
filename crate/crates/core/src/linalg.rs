//! Fraction-free linear algebra over exact integral domains.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::intpoly::IntPoly;
use crate::poly::{MPoly, UPoly, URat};

/// An integral domain with exact division, enough for Bareiss elimination.
pub trait Domain: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `self / d`, required to be exact.
    fn exact_div(&self, d: &Self) -> Result<Self>;

    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Domain for GaussianRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, d: &Self) -> Result<Self> {
        if Zero::is_zero(d) {
            return Err(Error::SingularMatrix);
        }
        Ok(self / d)
    }
}

impl Domain for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, d: &Self) -> Result<Self> {
        MPoly::exact_div(self, d)
    }
}

impl Domain for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, d: &Self) -> Result<Self> {
        UPoly::exact_div(self, d)
    }
}

impl Domain for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        IntPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        IntPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        IntPoly::mul(self, o)
    }
    fn exact_div(&self, d: &Self) -> Result<Self> {
        IntPoly::exact_div(self, d)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(k, x)| ((k / cols, k % cols), x))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> std::result::Result<U, E>) -> std::result::Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> Matrix<T> {
        Matrix::from_fn(k, k, |r, c| self[(r, c)].clone())
    }
}

impl<T: Domain> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, o: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != o.rows {
            return Err(Error::SizeMismatch(self.cols, o.rows));
        }
        Ok(Matrix::from_fn(self.rows, o.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| acc.add(&self[(r, k)].mul(&o[(k, c)])))
        }))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn find_pivot<T: Domain>(a: &[Vec<T>], k: usize) -> Option<usize> {
    (k..a.len()).find(|&r| !a[r][k].is_zero())
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
/// The empty matrix has determinant 1.
pub fn bareiss_det<T: Domain>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::SizeMismatch(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone().into_rows();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        let Some(p) = find_pivot(&a, k) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let prev_ref = &prev;
        bottom.par_iter_mut().try_for_each(|row| -> Result<()> {
            let lead = std::mem::replace(&mut row[k], T::zero());
            for j in k + 1..n {
                let num = pivot_row[k].mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = num.exact_div(prev_ref)?;
            }
            Ok(())
        })?;
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// `(det M, adj M)` by fraction-free Gauss–Jordan elimination on
/// `[M | I]`. Fails with `SingularMatrix` when `det M = 0`.
pub fn adjugate<T: Domain>(m: &Matrix<T>) -> Result<(T, Matrix<T>)> {
    if !m.is_square() {
        return Err(Error::SizeMismatch(m.rows, m.cols));
    }
    let n = m.rows;
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { T::one() } else { T::zero() }));
            row
        })
        .collect();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let p = find_pivot(&a, k).ok_or(Error::SingularMatrix)?;
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let pivot_row = a[k].clone();
        let prev_ref = &prev;
        a.par_iter_mut().enumerate().filter(|(i, _)| *i != k).try_for_each(
            |(_, row)| -> Result<()> {
                let lead = std::mem::replace(&mut row[k], T::zero());
                for j in 0..2 * n {
                    if j == k || (row[j].is_zero() && pivot_row[j].is_zero()) {
                        continue;
                    }
                    let num = if lead.is_zero() {
                        pivot_row[k].mul(&row[j])
                    } else {
                        pivot_row[k].mul(&row[j]).sub(&lead.mul(&pivot_row[j]))
                    };
                    row[j] = num.exact_div(prev_ref)?;
                }
                Ok(())
            },
        )?;
        prev = pivot_row[k].clone();
    }
    // now a = [d·I | d·M⁻¹] with d = ±det M
    let det = if negate { prev.neg() } else { prev };
    let adj = Matrix::from_fn(n, n, |r, c| {
        let x = a[r][n + c].clone();
        if negate { x.neg() } else { x }
    });
    Ok((det, adj))
}

/// Inverse of a univariate polynomial matrix with every entry reduced to
/// lowest terms, together with its determinant.
pub fn adjugate_inverse(m: &Matrix<UPoly>) -> Result<(Matrix<URat>, UPoly)> {
    if !m.is_square() {
        return Err(Error::SizeMismatch(m.rows, m.cols));
    }
    let n = m.rows;
    // clear denominators: A = L·M over ℤ[q]
    let lcm = m.iter().fold(BigInt::one(), |l, (_, p)| {
        let (_, d) = p.to_int();
        num_integer::Integer::lcm(&l, &d)
    });
    let lr = num_rational::BigRational::from_integer(lcm.clone());
    let a = m.map(|p| p.scale(&lr).to_int().0);
    let (det_a, adj_a) = adjugate(&a)?;
    let det_a = UPoly::from_int(&det_a);
    // M⁻¹ = L·adj(A)/det(A), det M = det A / Lⁿ
    let entries: Vec<Result<URat>> = adj_a
        .data
        .par_iter()
        .map(|x| URat::new(UPoly::from_int(x).scale(&lr), det_a.clone()))
        .collect();
    let data = entries.into_iter().collect::<Result<Vec<_>>>()?;
    let inv = Matrix { rows: n, cols: n, data };
    let det = det_a.scale(&lr.pow(n as i32).recip());
    Ok((inv, det))
}

/// Gaussian integers, the working domain of [`det_gaussian`].
#[derive(Clone, PartialEq, Debug)]
struct GaussInt(BigInt, BigInt);

impl Domain for GaussInt {
    fn zero() -> Self {
        GaussInt(BigInt::zero(), BigInt::zero())
    }
    fn one() -> Self {
        GaussInt(BigInt::one(), BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussInt(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn sub(&self, o: &Self) -> Self {
        GaussInt(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn mul(&self, o: &Self) -> Self {
        GaussInt(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn exact_div(&self, d: &Self) -> Result<Self> {
        let norm = &d.0 * &d.0 + &d.1 * &d.1;
        if norm.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let re = &self.0 * &d.0 + &self.1 * &d.1;
        let im = &self.1 * &d.0 - &self.0 * &d.1;
        use num_integer::Integer;
        let (qr, rr) = re.div_rem(&norm);
        let (qi, ri) = im.div_rem(&norm);
        if !rr.is_zero() || !ri.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(GaussInt(qr, qi))
    }
}

/// Determinant of a matrix over ℚ(i): each row is scaled to Gaussian
/// integers first so that elimination never reduces fractions.
pub fn det_gaussian(m: &Matrix<GaussianRational>) -> Result<GaussianRational> {
    if !m.is_square() {
        return Err(Error::SizeMismatch(m.rows, m.cols));
    }
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let l = m.row(r).iter().fold(BigInt::one(), |l, z| {
            num_integer::Integer::lcm(&num_integer::Integer::lcm(&l, z.re.denom()), z.im.denom())
        });
        rows.push(
            m.row(r)
                .iter()
                .map(|z| GaussInt((&z.re * &l).to_integer(), (&z.im * &l).to_integer()))
                .collect(),
        );
        scale *= l;
    }
    let d = bareiss_det(&Matrix::from_rows(rows))?;
    let s = num_rational::BigRational::from_integer(scale);
    Ok(GaussianRational::new(
        num_rational::BigRational::from_integer(d.0) / &s,
        num_rational::BigRational::from_integer(d.1) / &s,
    ))
}

/// Leading principal minors `det M[..k, ..k]` for `k = 1..=n`.
///
/// Bareiss pivots are exactly these minors while no row swap is needed;
/// after a zero pivot the remaining minors are computed one by one.
pub fn leading_principal_minors<T: Domain>(m: &Matrix<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return Err(Error::SizeMismatch(m.rows, m.cols));
    }
    let n = m.rows;
    let mut a = m.clone().into_rows();
    let mut minors = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            minors.push(T::zero());
            for size in k + 2..=n {
                minors.push(bareiss_det(&m.leading(size))?);
            }
            return Ok(minors);
        }
        minors.push(pivot.clone());
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let prev_ref = &prev;
        bottom.par_iter_mut().try_for_each(|row| -> Result<()> {
            let lead = std::mem::replace(&mut row[k], T::zero());
            for j in k + 1..n {
                let num = pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = num.exact_div(prev_ref)?;
            }
            Ok(())
        })?;
        prev = pivot;
    }
    Ok(minors)
}
