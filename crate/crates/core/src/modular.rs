//! Multi-modular solution of `M y = det(M) e_j` over ℤ[q].
//!
//! For each word-sized prime `p`, `M` is evaluated at `D + 1` points of
//! `𝔽_p` where it is invertible, the system is solved there, and `det` and
//! `y` are interpolated. The residues are lifted by CRT until the modulus
//! exceeds twice a coefficient bound, then the result is checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::intpoly::IntPoly;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, largest first.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 1;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

fn horner(c: &[u64], t: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| (mul_mod(acc, t, p) + a) % p)
}

/// `(det A, det A · A⁻¹ e_col)` over `𝔽_p`; `None` when `A` is singular.
fn solve_mod(mut a: Vec<Vec<u64>>, col: usize, p: u64) -> Option<(u64, Vec<u64>)> {
    let n = a.len();
    let mut b = vec![0u64; n];
    b[col] = 1;
    let mut det = 1u64;
    for k in 0..n {
        let piv = (k..n).find(|&r| a[r][k] != 0)?;
        if piv != k {
            a.swap(piv, k);
            b.swap(piv, k);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[k][k], p);
        let inv = inv_mod(a[k][k], p);
        for r in k + 1..n {
            if a[r][k] == 0 {
                continue;
            }
            let f = mul_mod(a[r][k], inv, p);
            for c in k..n {
                a[r][c] = (a[r][c] + p - mul_mod(f, a[k][c], p)) % p;
            }
            b[r] = (b[r] + p - mul_mod(f, b[k], p)) % p;
        }
    }
    let mut x = vec![0u64; n];
    for k in (0..n).rev() {
        let mut s = b[k];
        for c in k + 1..n {
            s = (s + p - mul_mod(a[k][c], x[c], p)) % p;
        }
        x[k] = mul_mod(s, inv_mod(a[k][k], p), p);
    }
    Some((det, x.into_iter().map(|v| mul_mod(v, det, p)).collect()))
}

/// Inverses of the divided-difference denominators `t_k − t_{k−level}`,
/// shared by every polynomial interpolated on the same points.
struct NewtonTable {
    ts: Vec<u64>,
    inv: Vec<Vec<u64>>,
}

impl NewtonTable {
    fn new(ts: Vec<u64>, p: u64) -> Self {
        let m = ts.len();
        let inv = (1..m)
            .map(|level| (level..m).map(|k| inv_mod((ts[k] + p - ts[k - level]) % p, p)).collect())
            .collect();
        Self { ts, inv }
    }

    /// Coefficients of the polynomial through `(ts[k], vs[k])`.
    fn interpolate(&self, vs: &[u64], p: u64) -> Vec<u64> {
        let ts = &self.ts;
        let m = ts.len();
        let mut dd = vs.to_vec();
        for level in 1..m {
            let inv = &self.inv[level - 1];
            for k in (level..m).rev() {
                let num = (dd[k] + p - dd[k - 1]) % p;
                dd[k] = mul_mod(num, inv[k - level], p);
            }
        }
        // expand the Newton form from the innermost coefficient outwards
        let mut c = vec![0u64; m];
        for k in (0..m).rev() {
            for j in (1..m).rev() {
                c[j] = (c[j - 1] + p - mul_mod(c[j], ts[k], p)) % p;
            }
            c[0] = (p - mul_mod(c[0], ts[k], p)) % p;
            c[0] = (c[0] + dd[k]) % p;
        }
        c
    }
}

/// `det` and `y` mod `p` by interpolation through good points, or `None`
/// when too few points avoid the zeros of `det` mod `p`.
fn one_prime(m: &Matrix<IntPoly>, col: usize, degree: usize, p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.rows();
    let reduced: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|r| (0..n).map(|c| m[(r, c)].0.iter().map(|x| residue(x, p)).collect()).collect())
        .collect();
    let need = degree + 1;
    let mut ts = Vec::with_capacity(need);
    let mut sols = Vec::with_capacity(need);
    let mut next = 0u64;
    let max_tries = 2 * need as u64 + 64;
    while ts.len() < need && next < max_tries {
        let batch: Vec<u64> = (next..next + (need - ts.len()) as u64).collect();
        next += batch.len() as u64;
        let results: Vec<(u64, Option<(u64, Vec<u64>)>)> = batch
            .par_iter()
            .map(|&t| {
                let a = reduced.iter().map(|row| row.iter().map(|e| horner(e, t, p)).collect()).collect();
                (t, solve_mod(a, col, p))
            })
            .collect();
        for (t, s) in results {
            if let Some(s) = s {
                ts.push(t);
                sols.push(s);
            }
        }
    }
    if ts.len() < need {
        return None;
    }
    let table = NewtonTable::new(ts, p);
    let polys = (0..=n)
        .into_par_iter()
        .map(|i| {
            let vals: Vec<u64> = sols.iter().map(|s| if i == 0 { s.0 } else { s.1[i - 1] }).collect();
            table.interpolate(&vals, p)
        })
        .collect();
    Some(polys)
}

/// `(det M, adj(M) e_col)` for a square matrix over ℤ[q].
pub(crate) fn adjugate_column(m: &Matrix<IntPoly>, col: usize) -> Result<(IntPoly, Vec<IntPoly>)> {
    if !m.is_square() {
        return Err(Error::SizeMismatch(m.rows(), m.cols()));
    }
    let n = m.rows();
    if col >= n {
        return Err(Error::Invalid(format!("column {col} out of range")));
    }
    let degree: usize = (0..n).map(|r| m.row(r).iter().filter_map(IntPoly::degree).max().unwrap_or(0)).sum();
    // every coefficient of det M or of a cofactor is at most ∏_r Σ_c |M_rc|₁
    let bound: BigInt = (0..n).map(|r| m.row(r).iter().map(IntPoly::norm1).sum::<BigInt>()).product();
    if bound.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let target: BigInt = &bound * 2 + 1;
    let max_bad = (target.bits() / 61 + 2) as usize;
    let mut modulus = BigInt::one();
    let mut acc: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); degree + 1]; n + 1];
    let mut bad = 0;
    for p in Primes(1 << 62) {
        if modulus > target {
            break;
        }
        let Some(polys) = one_prime(m, col, degree, p) else {
            bad += 1;
            if bad > max_bad {
                return Err(Error::SingularMatrix);
            }
            continue;
        };
        let pb = BigInt::from(p);
        let inv = BigInt::from(inv_mod(residue(&modulus, p), p));
        acc.par_iter_mut().zip(polys.par_iter()).for_each(|(a, r)| {
            for (x, &rk) in a.iter_mut().zip(r) {
                let delta = ((BigInt::from(rk) - &*x) * &inv).mod_floor(&pb);
                *x += &modulus * delta;
            }
        });
        modulus *= pb;
    }
    let half = &modulus / 2;
    let lift = |v: &Vec<BigInt>| {
        IntPoly::new(v.iter().map(|x| if x > &half { x - &modulus } else { x.clone() }).collect())
    };
    let det = lift(&acc[0]);
    let y: Vec<IntPoly> = acc[1..].iter().map(lift).collect();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let ok = (0..n).into_par_iter().all(|r| {
        let s = (0..n).fold(IntPoly::zero(), |s, c| s.add(&m[(r, c)].mul(&y[c])));
        if r == col { s == det } else { s.is_zero() }
    });
    if !ok {
        return Err(Error::Invalid("modular reconstruction failed exact verification".into()));
    }
    Ok((det, y))
}
