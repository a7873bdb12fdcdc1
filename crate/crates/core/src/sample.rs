//! Seeded random parameter points.
//!
//! Every generator draws from a caller-supplied `ChaCha8Rng`, so a seed
//! fixes the whole sequence of points.

use rand::Rng;
use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::gaussian::GaussianRational;
use crate::braid::{OrderedSetPartition, Permutation};
use crate::poly::{MPoly, Monomial, Point, VarId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct values of `indices`, sorted.
pub fn support(indices: &[u32]) -> Vec<u32> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn small_fraction(rng: &mut ChaCha8Rng) -> (i64, i64) {
    (rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// A Gaussian rational with both parts `a/b`, `|a| ≤ 9`, `1 ≤ b ≤ 9`.
pub fn gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let (a, b) = small_fraction(rng);
    let (c, d) = small_fraction(rng);
    GaussianRational::from_fractions(a, b, c, d)
}

/// A point of the grid `{−4/5,…,4/5}²` with `|z|² < 1`.
pub fn unit_disc(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let a: i64 = rng.gen_range(-4..=4);
        let b: i64 = rng.gen_range(-4..=4);
        if a * a + b * b < 25 {
            return GaussianRational::from_fractions(a, 5, b, 5);
        }
    }
}

/// Independent random Gaussian rationals for every `q[a][b]`, `a, b` in
/// the support of `indices`.
pub fn gaussian_point(indices: &[u32], rng: &mut ChaCha8Rng) -> Point {
    let s = support(indices);
    let mut p = Point::new();
    for &a in &s {
        for &b in &s {
            p.insert(VarId::new(a, b), gaussian(rng));
        }
    }
    p
}

/// Independent unit-disc grid values for every `q[a][b]`.
pub fn unit_disc_point(indices: &[u32], rng: &mut ChaCha8Rng) -> Point {
    let s = support(indices);
    let mut p = Point::new();
    for &a in &s {
        for &b in &s {
            p.insert(VarId::new(a, b), unit_disc(rng));
        }
    }
    p
}

/// Unit-disc grid values with `q[b][a] = conj(q[a][b])` and real
/// diagonal `q[a][a]`.
pub fn hermitian_point(indices: &[u32], rng: &mut ChaCha8Rng) -> Point {
    let s = support(indices);
    let mut p = Point::new();
    for (k, &a) in s.iter().enumerate() {
        let d: i64 = rng.gen_range(-4..=4);
        p.insert(VarId::new(a, a), GaussianRational::from_fractions(d, 5, 0, 1));
        for &b in &s[k + 1..] {
            let z = unit_disc(rng);
            p.insert(VarId::new(b, a), z.conj());
            p.insert(VarId::new(a, b), z);
        }
    }
    p
}

/// A sparse polynomial in `q[a][b]`, `a, b ≤ max_index`, with up to
/// `max_terms` terms of degree at most 3 per variable.
pub fn mpoly(max_index: u32, max_terms: usize, rng: &mut ChaCha8Rng) -> MPoly {
    let terms = rng.gen_range(0..=max_terms);
    MPoly::from_terms((0..terms).map(|_| {
        let vars = rng.gen_range(0..=3);
        let m = Monomial::from_factors((0..vars).map(|_| {
            let v = VarId::new(rng.gen_range(1..=max_index), rng.gen_range(1..=max_index));
            (v, rng.gen_range(1..=3))
        }));
        (m, gaussian(rng))
    }))
}

/// A word of length `len` over `1..=alphabet`.
pub fn word(len: usize, alphabet: u32, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(1..=alphabet)).collect()
}

/// A uniformly random permutation of `[n]`.
pub fn permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    for k in (1..n).rev() {
        v.swap(k, rng.gen_range(0..=k));
    }
    Permutation::new(v).expect("shuffled identity")
}

/// A random face of the braid arrangement on `[n]`, `n ≥ 1`: a random
/// permutation cut at random positions.
pub fn face(n: usize, rng: &mut ChaCha8Rng) -> OrderedSetPartition {
    let sigma = permutation(n, rng);
    let mut blocks = vec![vec![sigma.as_slice()[0]]];
    for &x in &sigma.as_slice()[1..] {
        if rng.gen_bool(0.5) {
            blocks.push(Vec::new());
        }
        blocks.last_mut().expect("nonempty").push(x);
    }
    OrderedSetPartition::new(blocks).expect("partition of [n]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn seeded_and_reproducible() {
        let a = hermitian_point(&[1, 2, 2, 3], &mut rng(7));
        let b = hermitian_point(&[1, 2, 2, 3], &mut rng(7));
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
        for (v, z) in &a {
            assert_eq!(&a[&v.transpose()], &z.conj());
            assert!(z.norm_sqr() < num_rational::BigRational::one());
        }
        assert_ne!(gaussian_point(&[1, 2], &mut rng(1)), gaussian_point(&[1, 2], &mut rng(2)));
    }
}
