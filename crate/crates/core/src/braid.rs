//! The braid arrangement `x_i = x_j` in ℝⁿ.
//!
//! Chambers are permutations `σ` (the region `x_{σ(1)} < … < x_{σ(n)}`),
//! faces are ordered set partitions of `[n]` (equal coordinates inside a
//! block, blocks increasing left to right). The half-space `x_i < x_j`
//! carries the variable `q[i][j]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::combinat::{distinct_permutations, factorial, next_permutation, subsets};
use crate::error::{check_limit, Error, Result};
use crate::linalg::Matrix;
use crate::poly::{MPoly, Monomial, Point, UPoly, VarId};
use crate::GaussianRational;

/// Largest `n` for which `γ_n` (an `n! × n!` matrix) is built.
pub const MAX_GAMMA_N: usize = 6;
/// Largest `n` for face and flat enumeration.
pub const MAX_FACE_N: usize = 8;

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(one_line: Vec<u32>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &x in &one_line {
            let k = x as usize;
            if k == 0 || k > n || seen[k - 1] {
                return Err(Error::Invalid(format!("{one_line:?} is not a permutation of [{n}]")));
            }
            seen[k - 1] = true;
        }
        Ok(Self(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n as u32).collect())
    }

    /// All of `𝔖_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `σ(k)` for `k` in `1..=n`.
    pub fn apply(&self, k: u32) -> u32 {
        self.0[k as usize - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = pos as u32 + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation(other.0.iter().map(|&k| self.apply(k)).collect()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn am_monomial(sigma: &[u32], tau_pos: &[u32], label: impl Fn(usize) -> u32) -> Monomial {
    let n = sigma.len();
    let mut f = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if tau_pos[sigma[i] as usize - 1] > tau_pos[sigma[j] as usize - 1] {
                f.push((VarId::new(label(i), label(j)), 1));
            }
        }
    }
    Monomial::from_factors(f)
}

/// The Aguiar–Mahajan form `v(C_σ, C_τ)`: the product of `q[σ(i)][σ(j)]`
/// over position pairs `i < j` that `τ` puts in the opposite order.
pub fn am_form(sigma: &Permutation, tau: &Permutation) -> Result<MPoly> {
    if sigma.n() != tau.n() {
        return Err(Error::SizeMismatch(sigma.n(), tau.n()));
    }
    let pos = tau.inverse();
    Ok(MPoly::monomial(am_monomial(&sigma.0, &pos.0, |i| sigma.0[i])))
}

/// Matrix of `γ_n`: row `τ`, column `σ` holds `v(C_τ, C_σ)`, chambers in
/// lexicographic order.
pub fn gamma_matrix(n: usize) -> Result<Matrix<MPoly>> {
    if n == 0 {
        return Err(Error::Invalid("γ_n needs n ≥ 1".into()));
    }
    check_limit("n for gamma_matrix", n, MAX_GAMMA_N)?;
    let ch = Permutation::all(n);
    let inv: Vec<Permutation> = ch.iter().map(Permutation::inverse).collect();
    let rows: Vec<Vec<MPoly>> = ch
        .par_iter()
        .map(|tau| {
            inv.iter()
                .map(|sigma_pos| MPoly::monomial(am_monomial(&tau.0, &sigma_pos.0, |i| tau.0[i])))
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows))
}

/// Value of position label `s` under a multiset: the `s`-th smallest
/// element. Labels are 1-based.
fn dot_labels(word: &[u32]) -> Vec<u32> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    sorted
}

/// `q[s][t] -> q[ṡ][ṫ]` for all `s ≠ t` in `[n]`, where `ṡ` is the
/// `s`-th smallest element of `multiset`.
pub fn dot_substitution(multiset: &[u32]) -> BTreeMap<VarId, VarId> {
    let dots = dot_labels(multiset);
    let n = dots.len() as u32;
    let mut m = BTreeMap::new();
    for s in 1..=n {
        for t in 1..=n {
            if s != t {
                m.insert(VarId::new(s, t), VarId::new(dots[s as usize - 1], dots[t as usize - 1]));
            }
        }
    }
    m
}

/// `p⁻¹(σ̇)`: permutations `σ` of `[n]` whose dotted one-line word is `σ̇`.
pub fn preimages(sigma_dot: &[u32]) -> Vec<Permutation> {
    let dots = dot_labels(sigma_dot);
    let mut groups: BTreeMap<u32, (Vec<usize>, Vec<u32>)> = BTreeMap::new();
    for (pos, &v) in sigma_dot.iter().enumerate() {
        groups.entry(v).or_default().0.push(pos);
    }
    for (label, &v) in dots.iter().enumerate() {
        groups.get_mut(&v).expect("same multiset").1.push(label as u32 + 1);
    }
    let mut out = vec![vec![0u32; sigma_dot.len()]];
    for (positions, labels) in groups.values() {
        let arrangements = distinct_permutations(labels);
        let mut next = Vec::with_capacity(out.len() * arrangements.len());
        for partial in &out {
            for arr in &arrangements {
                let mut w = partial.clone();
                for (&p, &l) in positions.iter().zip(arr) {
                    w[p] = l;
                }
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(Permutation).collect()
}

/// `v(C_σ̇, C_τ) = Σ_{σ ∈ p⁻¹(σ̇)} v(C_σ, C_τ)` with each `q[s][t]`
/// relabelled to `q[ṡ][ṫ]`.
pub fn coset_sum_form(sigma_dot: &[u32], tau: &Permutation) -> Result<MPoly> {
    if sigma_dot.len() != tau.n() {
        return Err(Error::SizeMismatch(sigma_dot.len(), tau.n()));
    }
    if sigma_dot.contains(&0) {
        return Err(Error::Invalid("multiset entries must be positive".into()));
    }
    let pos = tau.inverse();
    Ok(preimages(sigma_dot)
        .iter()
        .map(|s| MPoly::monomial(am_monomial(&s.0, &pos.0, |i| sigma_dot[i])))
        .sum())
}

/// A face of the braid arrangement as an ordered set partition of `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<u32>>,
}

impl OrderedSetPartition {
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                let k = x as usize;
                if k == 0 || k > n || seen[k - 1] {
                    return Err(Error::Invalid(format!("blocks do not partition [{n}]")));
                }
                seen[k - 1] = true;
            }
        }
        Ok(Self { blocks })
    }

    /// The chamber `C_σ`.
    pub fn chamber(sigma: &Permutation) -> Self {
        Self { blocks: sigma.0.iter().map(|&x| vec![x]).collect() }
    }

    /// The central face `O` (one block).
    pub fn center(n: usize) -> Self {
        Self { blocks: vec![(1..=n as u32).collect()] }
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn is_chamber(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_center(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Dimension of the face minus that of `O`.
    pub fn rank(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Index of the block holding `x`.
    pub fn block_of(&self, x: u32) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("element of [n]")
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Tits product `FG`: each block of `F` split along the blocks of `G`,
/// keeping `G`'s order inside.
pub fn face_product(f: &OrderedSetPartition, g: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    if f.n() != g.n() {
        return Err(Error::SizeMismatch(f.n(), g.n()));
    }
    let mut blocks = Vec::new();
    for b in &f.blocks {
        for c in &g.blocks {
            let part: Vec<u32> = b.iter().copied().filter(|x| c.contains(x)).collect();
            if !part.is_empty() {
                blocks.push(part);
            }
        }
    }
    Ok(OrderedSetPartition { blocks })
}

/// Faces `K` with `O ⪯ K ⪯ C_σ`: one per composition of `n`, obtained by
/// cutting `σ`'s one-line word into consecutive blocks. `O` comes first,
/// `C_σ` last.
pub fn faces_below_chamber(sigma: &Permutation) -> Result<Vec<OrderedSetPartition>> {
    let n = sigma.n();
    check_limit("n for face enumeration", n, MAX_FACE_N)?;
    if n == 0 {
        return Ok(vec![OrderedSetPartition { blocks: Vec::new() }]);
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u32..(1 << (n - 1)) {
        let mut blocks = vec![vec![sigma.0[0]]];
        for k in 1..n {
            if mask & (1 << (k - 1)) != 0 {
                blocks.push(Vec::new());
            }
            blocks.last_mut().expect("nonempty").push(sigma.0[k]);
        }
        out.push(OrderedSetPartition::new(blocks)?);
    }
    Ok(out)
}

/// `∏_{s<t in I} q[s][t]·q[t][s]`
pub fn pair_weight(items: &[u32]) -> Monomial {
    let mut f = Vec::new();
    for (a, &s) in items.iter().enumerate() {
        for &t in &items[a + 1..] {
            f.push((VarId::new(s, t), 1));
            f.push((VarId::new(t, s), 1));
        }
    }
    Monomial::from_factors(f)
}

/// Weight `b_F` of a face; zero for chambers.
pub fn face_weight(f: &OrderedSetPartition) -> MPoly {
    if f.is_chamber() {
        return MPoly::zero();
    }
    MPoly::monomial(f.blocks.iter().fold(Monomial::one(), |m, b| m.mul(&pair_weight(b))))
}

/// `Δ_{O,C_σ} = ∏ (1 − b_K)` over every face between `O` and `C_σ`.
pub fn delta_interval(sigma: &Permutation) -> Result<MPoly> {
    Ok(faces_below_chamber(sigma)?
        .iter()
        .map(|k| &MPoly::one() - &face_weight(k))
        .product())
}

/// `∏_{i∈[n−1]} (1 − q^{(n−i)²+(n−i)})^i`, the closed form claimed for
/// `Δ_{O,C_σ}` in the one-parameter case.
pub fn corollary_delta_closed_form(n: usize) -> UPoly {
    (1..n)
        .map(|i| {
            let m = n - i;
            UPoly::one_minus_q_pow(m * m + m).pow(i as u32)
        })
        .product()
}

/// A flat `E_I = ⋂_{i,j ∈ I} H_{i,j}`, identified by `I` with `|I| ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatSubset(Vec<u32>);

impl FlatSubset {
    pub fn new(mut items: Vec<u32>) -> Result<Self> {
        items.sort_unstable();
        items.dedup();
        if items.len() < 2 || items.contains(&0) {
            return Err(Error::Invalid("a flat needs at least two positive indices".into()));
        }
        Ok(Self(items))
    }

    pub fn items(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Flat {
    pub subset: FlatSubset,
    pub weight: MPoly,
    pub beta: u64,
}

/// `(|I| − 2)! (n − |I| + 1)!`
pub fn flat_multiplicity(size: usize, n: usize) -> u64 {
    factorial(size - 2) * factorial(n + 1 - size)
}

/// Every flat `E_I` of the arrangement with its weight and multiplicity.
pub fn flats_and_multiplicities(n: usize) -> Result<Vec<Flat>> {
    if n < 2 {
        return Err(Error::Invalid("flats need n ≥ 2".into()));
    }
    check_limit("n for flat enumeration", n, MAX_FACE_N)?;
    let all: Vec<u32> = (1..=n as u32).collect();
    Ok(subsets(&all, 2)
        .into_iter()
        .map(|s| Flat {
            weight: MPoly::monomial(pair_weight(&s)),
            beta: flat_multiplicity(s.len(), n),
            subset: FlatSubset(s),
        })
        .collect())
}

/// A product `∏ (1 − w_K)^{e_K}` kept in factored form.
#[derive(Clone, Debug, PartialEq)]
pub struct DetFactorization {
    set: Vec<u32>,
    factors: Vec<(MPoly, u64)>,
}

/// Largest `|J|` whose closed-form determinant is expanded symbolically.
pub const MAX_EXPAND: usize = 3;

impl DetFactorization {
    pub fn set(&self) -> &[u32] {
        &self.set
    }

    pub fn factors(&self) -> &[(MPoly, u64)] {
        &self.factors
    }

    pub fn expand(&self) -> Result<MPoly> {
        check_limit("|J| for symbolic expansion", self.set.len(), MAX_EXPAND)?;
        Ok(self.factors.iter().map(|(f, e)| f.pow(*e as u32)).product())
    }

    pub fn eval(&self, point: &Point) -> Result<GaussianRational> {
        let mut acc = GaussianRational::one();
        for (f, e) in &self.factors {
            acc = &acc * &f.eval(point)?.pow(*e as u32);
        }
        Ok(acc)
    }

    /// Image under `q[i][j] -> q`.
    pub fn specialize_uniform(&self) -> Result<UPoly> {
        let mut acc = UPoly::one();
        for (f, e) in &self.factors {
            acc = &acc * &f.specialize_uniform()?.pow(*e as u32);
        }
        Ok(acc)
    }
}

impl fmt::Display for DetFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// `det M_J = ∏_{K ⊆ J, |K| ≥ 2} (1 − ∏_{s<t∈K} q[s][t]q[t][s])^{(|K|−2)!(|J|−|K|+1)!}`
/// for a set `J` of distinct indices.
pub fn det_closed_form(set: &[u32]) -> Result<DetFactorization> {
    let mut j = set.to_vec();
    j.sort_unstable();
    if j.is_empty() || j.contains(&0) || j.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invalid("J must be a nonempty set of positive integers".into()));
    }
    check_limit("|J|", j.len(), MAX_FACE_N)?;
    let n = j.len();
    let factors = subsets(&j, 2)
        .into_iter()
        .map(|k| (&MPoly::one() - &MPoly::monomial(pair_weight(&k)), flat_multiplicity(k.len(), n)))
        .collect();
    Ok(DetFactorization { set: j, factors })
}
