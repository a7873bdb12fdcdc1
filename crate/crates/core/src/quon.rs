//! Vacuum expectations `⟨0| a_{i_s}…a_{i_1} a†_{j_1}…a†_{j_t} |0⟩` under
//! `a_i a†_j = q[i][j] a†_j a_i + δ_ij` and `a_i|0⟩ = 0`.
//!
//! Pushing `a_i` through `a†_{j_1}…a†_{j_t}|0⟩` leaves one term per
//! position `u` with `j_u = i`: the word with position `u` deleted,
//! weighted by `q[i][j_1]⋯q[i][j_{u-1}]`. Annihilators are removed
//! innermost first (`i_1` first). Branches that reach the same creator
//! word are merged, so the work-list holds at most one entry per
//! sub-multiset arrangement rather than one per branch.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::{MPoly, Monomial, Point, VarId};

/// `annihilators = (i_1,…,i_s)` stands for the operator `a_{i_s}…a_{i_1}`,
/// `creators = (j_1,…,j_t)` for `a†_{j_1}…a†_{j_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuonWord {
    pub annihilators: Vec<u32>,
    pub creators: Vec<u32>,
}

impl QuonWord {
    pub fn new(annihilators: Vec<u32>, creators: Vec<u32>) -> Result<Self> {
        if annihilators.iter().chain(&creators).any(|&x| x == 0) {
            return Err(Error::Invalid("operator indices must be positive".into()));
        }
        Ok(Self { annihilators, creators })
    }

    /// Whether both words are rearrangements of the same multiset.
    pub fn balanced(&self) -> bool {
        same_multiset(&self.annihilators, &self.creators)
    }
}

pub(crate) fn same_multiset(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

/// One application of `a_i` to `a†_{creators}|0⟩`.
pub fn annihilate_once(i: u32, creators: &[u32]) -> Vec<(MPoly, Vec<u32>)> {
    let mut out = Vec::new();
    let mut prefix = Monomial::one();
    for (u, &j) in creators.iter().enumerate() {
        if j == i {
            let mut rest = creators.to_vec();
            rest.remove(u);
            out.push((MPoly::monomial(prefix.clone()), rest));
        }
        prefix = prefix.mul_var(VarId::new(i, j));
    }
    out
}

/// Coefficient type the contraction is generic over.
trait Weight: Clone {
    fn accumulate(&mut self, other: Self);
}

impl Weight for MPoly {
    fn accumulate(&mut self, other: Self) {
        *self = &*self + &other;
    }
}

impl Weight for GaussianRational {
    fn accumulate(&mut self, other: Self) {
        *self += &other;
    }
}

fn contract<W: Weight>(
    w: &QuonWord,
    one: W,
    times: &impl Fn(&W, &Monomial) -> Result<W>,
) -> Result<Option<W>> {
    let mut states: BTreeMap<Vec<u32>, W> = BTreeMap::new();
    states.insert(w.creators.clone(), one);
    for &i in &w.annihilators {
        let mut next: BTreeMap<Vec<u32>, W> = BTreeMap::new();
        for (word, coef) in states {
            for (c, rest) in annihilate_once(i, &word) {
                let m = c.as_monomial().expect("branch coefficients are monomials");
                let x = times(&coef, m)?;
                match next.entry(rest) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(x);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => e.get_mut().accumulate(x),
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        states = next;
    }
    Ok(states.remove(&Vec::new()))
}

/// Full contraction of a bra-ket to a polynomial; `⟨0|0⟩ = 1`.
pub fn braket(w: &QuonWord) -> MPoly {
    if !w.balanced() {
        return MPoly::zero();
    }
    braket_unchecked(w)
}

/// The recursion alone, without the multiset short-circuit.
pub(crate) fn braket_unchecked(w: &QuonWord) -> MPoly {
    contract(w, MPoly::one(), &|c: &MPoly, m: &Monomial| Ok(c.mul_monomial(m)))
        .expect("symbolic contraction cannot fail")
        .unwrap_or_else(MPoly::zero)
}

/// `⟨0| a_{τ(n)}…a_{τ(1)} a†_{σ(1)}…a†_{σ(n)} |0⟩`.
pub fn braket_pair(tau: &[u32], sigma: &[u32]) -> Result<MPoly> {
    if tau.len() != sigma.len() {
        return Err(Error::LengthMismatch(tau.len(), sigma.len()));
    }
    Ok(braket(&QuonWord::new(tau.to_vec(), sigma.to_vec())?))
}

/// The bra-ket evaluated at a point, without building the polynomial.
pub fn braket_eval(w: &QuonWord, point: &Point) -> Result<GaussianRational> {
    if !w.balanced() {
        return Ok(GaussianRational::from(0));
    }
    let r = contract(w, GaussianRational::one(), &|c: &GaussianRational, m: &Monomial| {
        Ok(c * &m.eval(point)?)
    })?;
    Ok(r.unwrap_or_else(|| GaussianRational::from(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn annihilate_once_examples() {
        assert_eq!(annihilate_once(1, &[2, 1]), vec![(MPoly::q(1, 2), vec![2])]);
        assert_eq!(
            annihilate_once(1, &[1, 1]),
            vec![(MPoly::one(), vec![1]), (MPoly::q(1, 1), vec![1])]
        );
        assert!(annihilate_once(3, &[1, 2]).is_empty());
    }

    #[test]
    fn braket_examples() {
        let w = |a: &[u32], c: &[u32]| QuonWord::new(a.to_vec(), c.to_vec()).unwrap();
        assert!(braket(&w(&[], &[])).is_one());
        assert!(braket(&w(&[1], &[1])).is_one());
        assert_eq!(braket(&w(&[1, 1], &[1, 1])), p("1 + q[1][1]"));
        // ⟨0| a3 a2 a1 · a1† a3† a2† |0⟩: a1 takes the first creator, a2 passes a3†
        assert_eq!(braket(&w(&[1, 2, 3], &[1, 3, 2])), MPoly::q(2, 3));
        assert!(braket(&w(&[1, 2], &[2, 2])).is_zero());
        assert!(braket(&w(&[1], &[])).is_zero());
    }

    #[test]
    fn braket_pair_examples() {
        assert!(braket_pair(&[1, 2, 3], &[1, 2, 3]).unwrap().is_one());
        // row 1, column 2 of the printed M_[3]: creators 123, annihilator word 132
        assert_eq!(braket_pair(&[1, 3, 2], &[1, 2, 3]).unwrap(), MPoly::q(3, 2));
        // row 6, column 1: creators 321, annihilator word 123
        assert_eq!(braket_pair(&[1, 2, 3], &[3, 2, 1]).unwrap(), p("q[1][2]*q[1][3]*q[2][3]"));
        assert!(braket_pair(&[1, 2], &[2, 2]).unwrap().is_zero());
        assert_eq!(braket_pair(&[1], &[1, 2]), Err(Error::LengthMismatch(1, 2)));
        assert!(braket_pair(&[0], &[0]).is_err());
    }

    #[test]
    fn repeated_letters_give_integer_coefficients() {
        let x = braket_pair(&[1, 1, 1], &[1, 1, 1]).unwrap();
        // [3]_q! in q[1][1]: (1)(1+q)(1+q+q^2)
        assert_eq!(x, p("1 + 2*q[1][1] + 2*q[1][1]^2 + q[1][1]^3"));
    }

    #[test]
    fn evaluation_matches_symbolic() {
        let pt: Point = [(1, 1), (1, 2), (2, 1), (2, 2)]
            .into_iter()
            .enumerate()
            .map(|(k, (i, j))| (VarId::new(i, j), GaussianRational::from_fractions(k as i64 + 1, 5, 1 - k as i64, 3)))
            .collect();
        for (a, c) in [(vec![1, 2, 1], vec![2, 1, 1]), (vec![2, 2, 1], vec![1, 2, 2]), (vec![1, 2], vec![1, 1])] {
            let w = QuonWord::new(a, c).unwrap();
            assert_eq!(braket_eval(&w, &pt).unwrap(), braket(&w).eval(&pt).unwrap());
        }
        let w = QuonWord::new(vec![1, 3], vec![3, 1]).unwrap();
        assert_eq!(braket_eval(&w, &pt), Err(Error::MissingAssignment(VarId::new(1, 3))));
    }

    #[test]
    fn recursion_alone_vanishes_on_mismatch() {
        for (a, c) in [(vec![1, 2], vec![2, 2]), (vec![1], vec![]), (vec![], vec![3]), (vec![1, 1, 2], vec![1, 2, 3])] {
            assert!(braket_unchecked(&QuonWord::new(a, c).unwrap()).is_zero());
        }
    }
}
