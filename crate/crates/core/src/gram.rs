//! Gram blocks `M_I` of the Fock inner product.
//!
//! The basis of `M_I` is the lexicographic list of rearrangements of the
//! multiset `I`. Entry `(r, c)` is the vacuum expectation with creator
//! word `basis[r]` and annihilator word `basis[c]`; this is the layout
//! in which the `[3]` block reads
//!
//! ```text
//! 1        q[3][2]  q[2][1]  ...
//! q[2][3]  1        ...
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::braid::{self, det_closed_form, gamma_matrix, preimages, DetFactorization, Permutation};
use crate::combinat::{distinct_permutations, multinomial};
use crate::error::{check_limit, Error, Result};
use crate::gaussian::GaussianRational;
use crate::linalg::{adjugate, adjugate_inverse, bareiss_det, det_gaussian, leading_principal_minors, Matrix};
use crate::modular;
use crate::poly::intpoly::IntPoly;
use crate::poly::{MPoly, Point, UPoly, URat, VarId};
use crate::quon::{braket_eval, braket_pair, QuonWord};
use crate::sample;

/// Largest `|I|` for symbolic blocks.
pub const MAX_SYMBOLIC: usize = 6;
/// Largest `|I|` for evaluated blocks.
pub const MAX_EVALUATED: usize = 8;
/// Largest evaluated block dimension.
pub const MAX_EVALUATED_DIM: usize = 720;
/// Largest `|I|` for the restriction construction.
pub const MAX_RESTRICTION: usize = 5;
/// Largest `|I|` for positivity checks.
pub const MAX_POSDEF: usize = 5;
/// Fewest random points accepted by a randomized identity test.
pub const MIN_SAMPLES: usize = 10;

fn validate(multiset: &[u32]) -> Result<Vec<u32>> {
    if multiset.contains(&0) {
        return Err(Error::Invalid("multiset entries must be positive".into()));
    }
    let mut m = multiset.to_vec();
    m.sort_unstable();
    Ok(m)
}

fn is_set(sorted: &[u32]) -> bool {
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Distinct rearrangements of `I` in lexicographic order.
pub fn multiset_permutations(multiset: &[u32]) -> Result<Vec<Vec<u32>>> {
    check_limit("|I| for multiset permutations", multiset.len(), MAX_EVALUATED)?;
    Ok(distinct_permutations(multiset))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramBlock {
    pub multiset: Vec<u32>,
    pub basis: Vec<Vec<u32>>,
    pub matrix: Matrix<MPoly>,
}

impl GramBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn eval(&self, point: &Point) -> Result<Matrix<GaussianRational>> {
        self.matrix.try_map(|e| e.eval(point))
    }

    /// Whether `matrix[r][c] = conj(matrix[c][r])` for every entry.
    pub fn is_tilde_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|r| (r..n).all(|c| self.matrix[(r, c)] == self.matrix[(c, r)].conj()))
    }
}

impl fmt::Display for GramBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.basis.iter().map(|w| word_string(w)).collect();
        writeln!(f, "multiset: {}", word_string(&self.multiset))?;
        writeln!(f, "basis: {}", words.join(" "))?;
        for r in 0..self.dim() {
            let row: Vec<String> = self.matrix.row(r).iter().map(MPoly::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn word_string(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// The symbolic block `M_I`.
pub fn gram_block(multiset: &[u32]) -> Result<GramBlock> {
    let sorted = validate(multiset)?;
    check_limit("|I| for symbolic gram_block", sorted.len(), MAX_SYMBOLIC)?;
    let basis = distinct_permutations(&sorted);
    let d = basis.len();
    let data: Vec<MPoly> = (0..d * d)
        .into_par_iter()
        .map(|k| braket_pair(&basis[k % d], &basis[k / d]).expect("equal lengths"))
        .collect();
    let mut it = data.into_iter();
    let matrix = Matrix::from_fn(d, d, |_, _| it.next().expect("d*d entries"));
    Ok(GramBlock { multiset: sorted, basis, matrix })
}

/// `M_I` evaluated at a point, entry by entry without building polynomials.
pub fn gram_block_eval(multiset: &[u32], point: &Point) -> Result<Matrix<GaussianRational>> {
    let sorted = validate(multiset)?;
    check_limit("|I| for evaluated gram_block", sorted.len(), MAX_EVALUATED)?;
    check_limit("evaluated block dimension", multinomial(&sorted) as usize, MAX_EVALUATED_DIM)?;
    let basis = distinct_permutations(&sorted);
    let d = basis.len();
    let data: Vec<GaussianRational> = (0..d * d)
        .into_par_iter()
        .map(|k| braket_eval(&QuonWord::new(basis[k / d].clone(), basis[k % d].clone())?, point))
        .collect::<Result<_>>()?;
    // data holds (annihilator row, creator column); the block is its transpose
    let mut it = data.into_iter();
    Ok(Matrix::from_fn(d, d, |_, _| it.next().expect("d*d entries")).transpose())
}

/// `M_I` from `γ_n`: relabel `q[s][t] -> q[ṡ][ṫ]`, sum the rows of each
/// coset `p⁻¹(τ̇)` and read one column per coset.
pub fn gram_block_via_restriction(multiset: &[u32]) -> Result<GramBlock> {
    let sorted = validate(multiset)?;
    check_limit("|I| for gram_block_via_restriction", sorted.len(), MAX_RESTRICTION)?;
    let n = sorted.len();
    let basis = distinct_permutations(&sorted);
    if n == 0 {
        return Ok(GramBlock { multiset: sorted, basis, matrix: Matrix::from_rows(vec![vec![MPoly::one()]]) });
    }
    let sub = braid::dot_substitution(&sorted);
    let gamma = gamma_matrix(n)?.try_map(|e| e.substitute_vars(&sub))?;
    let index: HashMap<Permutation, usize> =
        Permutation::all(n).into_iter().enumerate().map(|(k, p)| (p, k)).collect();
    let cosets: Vec<Vec<usize>> = basis.iter().map(|w| preimages(w).iter().map(|p| index[p]).collect()).collect();
    let d = basis.len();
    // restricted[x][y] = Σ_{τ ∈ p⁻¹(x)} γ[τ][rep(y)]
    let restricted = |x: usize, y: usize| -> MPoly {
        let col = cosets[y][0];
        cosets[x].iter().map(|&t| gamma[(t, col)].clone()).sum()
    };
    let data: Vec<MPoly> = (0..d * d).into_par_iter().map(|k| restricted(k % d, k / d)).collect();
    let mut it = data.into_iter();
    let matrix = Matrix::from_fn(d, d, |_, _| it.next().expect("d*d entries"));
    Ok(GramBlock { multiset: sorted, basis, matrix })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMode {
    Symbolic,
    Evaluated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetSample {
    pub value: GaussianRational,
    /// Closed-form value, for sets.
    pub expected: Option<GaussianRational>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetReport {
    pub multiset: Vec<u32>,
    pub mode: DetMode,
    /// Factored closed form, for sets.
    pub closed_form: Option<DetFactorization>,
    /// Bareiss determinant of the symbolic block.
    pub symbolic: Option<MPoly>,
    /// Expanded closed form, when it was compared symbolically.
    pub expanded: Option<MPoly>,
    pub seed: u64,
    pub samples: Vec<DetSample>,
    pub verdict: bool,
}

/// Symbolic mode limit on `|I|`.
pub const MAX_DET_SYMBOLIC: usize = 4;
/// Evaluated mode limit on `|I|`.
pub const MAX_DET_EVALUATED: usize = 6;
/// Largest block dimension whose determinant is expanded symbolically.
pub const MAX_SYMBOLIC_DET_DIM: usize = 6;
/// Largest block dimension whose determinant is evaluated at points.
pub const MAX_DET_EVALUATED_DIM: usize = 120;

/// Determinant of `M_I`, checked against the closed form for sets and for
/// nonvanishing inside the unit polydisc for proper multisets.
///
/// Sets with `|I| ≤ 3` are compared symbolically in symbolic mode; every
/// other comparison uses `samples` seeded random points.
pub fn block_determinant(multiset: &[u32], mode: DetMode, samples: usize, seed: u64) -> Result<DetReport> {
    let sorted = validate(multiset)?;
    let limit = match mode {
        DetMode::Symbolic => MAX_DET_SYMBOLIC,
        DetMode::Evaluated => MAX_DET_EVALUATED,
    };
    check_limit("|I| for block_determinant", sorted.len(), limit)?;
    let set = is_set(&sorted);
    let closed_form = if set && !sorted.is_empty() { Some(det_closed_form(&sorted)?) } else { None };
    let mut report = DetReport {
        multiset: sorted.clone(),
        mode,
        closed_form,
        symbolic: None,
        expanded: None,
        seed,
        samples: Vec::new(),
        verdict: true,
    };
    let dim = multinomial(&sorted) as usize;
    if mode == DetMode::Symbolic && dim <= MAX_SYMBOLIC_DET_DIM {
        let det = bareiss_det(&gram_block(&sorted)?.matrix)?;
        if let Some(cf) = report.closed_form.as_ref().filter(|_| sorted.len() <= braid::MAX_EXPAND) {
            let e = cf.expand()?;
            report.verdict = e == det;
            report.expanded = Some(e);
            report.symbolic = Some(det);
            return Ok(report);
        }
        if sorted.len() <= 1 {
            report.verdict = det.is_one();
            report.symbolic = Some(det);
            return Ok(report);
        }
        report.symbolic = Some(det);
    }
    if samples < MIN_SAMPLES {
        return Err(Error::SampleCountTooSmall { got: samples, min: MIN_SAMPLES });
    }
    if report.symbolic.is_none() {
        check_limit("dim M_I for evaluated determinants", dim, MAX_DET_EVALUATED_DIM)?;
    }
    let mut rng = sample::rng(seed);
    let points: Vec<Point> = (0..samples)
        .map(|_| if set { sample::gaussian_point(&sorted, &mut rng) } else { sample::unit_disc_point(&sorted, &mut rng) })
        .collect();
    let symbolic = report.symbolic.clone();
    let cf = report.closed_form.clone();
    report.samples = points
        .par_iter()
        .map(|p| -> Result<DetSample> {
            let value = match &symbolic {
                Some(d) => d.eval(p)?,
                None => det_gaussian(&gram_block_eval(&sorted, p)?)?,
            };
            let expected = cf.as_ref().map(|c| c.eval(p)).transpose()?;
            let ok = match &expected {
                Some(e) => *e == value,
                None => !value.is_zero(),
            };
            Ok(DetSample { value, expected, ok })
        })
        .collect::<Result<_>>()?;
    report.verdict = report.samples.iter().all(|s| s.ok);
    Ok(report)
}

/// `∏_{i∈[n−1]} (1 − q^{i²+i})^{n−i}`
pub fn zagier_denominator(n: usize) -> UPoly {
    (1..n).map(|i| UPoly::one_minus_q_pow(i * i + i).pow((n - i) as u32)).product()
}

/// Writes `p` as `c · ∏ (1 − q^k)^{e_k}` when possible: returns the
/// exponents (largest `k` first) and the cofactor left after removing
/// them.
pub fn factor_one_minus_q_powers(p: &UPoly) -> (Vec<(usize, u32)>, UPoly) {
    let mut rest = p.clone();
    let mut out = Vec::new();
    let Some(deg) = p.degree() else {
        return (out, rest);
    };
    for k in (1..=deg).rev() {
        let f = UPoly::one_minus_q_pow(k);
        let mut e = 0;
        while rest.degree().is_some_and(|d| d >= k) {
            match rest.div_rem(&f) {
                Ok((quot, r)) if r.is_zero() => {
                    rest = quot;
                    e += 1;
                }
                _ => break,
            }
        }
        if e > 0 {
            out.push((k, e));
        }
    }
    (out, rest)
}

/// Text for `∏ (1 − q^k)^e`.
pub fn one_minus_q_product_string(factors: &[(usize, u32)]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors
        .iter()
        .map(|&(k, e)| {
            let base = if k == 1 { "(1 - q)".to_string() } else { format!("(1 - q^{k})") };
            if e == 1 { base } else { format!("{base}^{e}") }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Scales `p` to constant term 1 when that term is nonzero.
pub fn unit_constant(p: &UPoly) -> UPoly {
    match p.coeffs().first() {
        Some(c) if !c.is_zero() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZagierReport {
    pub n: usize,
    pub determinant: UPoly,
    /// `(k, e)` with `determinant = ∏ (1 − q^k)^e`.
    pub determinant_factors: Vec<(usize, u32)>,
    pub bound: UPoly,
    /// Distinct reduced denominators (constant term 1) with entry counts.
    pub denominators: Vec<(UPoly, usize)>,
    /// Number of entries whose denominator does not divide the bound.
    pub failures: usize,
    pub verdict: bool,
}

impl fmt::Display for ZagierReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "determinant: {}", one_minus_q_product_string(&self.determinant_factors))?;
        let (bf, _) = factor_one_minus_q_powers(&self.bound);
        writeln!(f, "bound: {}", one_minus_q_product_string(&bf))?;
        writeln!(f, "bound expanded: {}", self.bound)?;
        writeln!(f, "entry denominators:")?;
        for (d, count) in &self.denominators {
            let (df, rest) = factor_one_minus_q_powers(d);
            let text = if rest.is_one() { one_minus_q_product_string(&df) } else { d.to_string() };
            writeln!(f, "  {count:>4} x {text}")?;
        }
        write!(f, "verdict: {}", if self.verdict { "ALL-DIVIDE" } else { "NOT-ALL-DIVIDE" })
    }
}

/// Largest `n` for the Zagier check.
pub const MAX_ZAGIER_N: usize = 5;

/// Inverts `M_[n]` under `q[i][j] -> q` and tests every reduced entry
/// denominator against [`zagier_denominator`].
pub fn zagier_check(n: usize) -> Result<ZagierReport> {
    if n < 2 {
        return Err(Error::Invalid("zagier_check needs n ≥ 2".into()));
    }
    check_limit("n for zagier_check", n, MAX_ZAGIER_N)?;
    let set: Vec<u32> = (1..=n as u32).collect();
    let block = gram_block(&set)?;
    let m = block.matrix.try_map(MPoly::specialize_uniform)?;
    let (det, dens) = match group_inverse_denominators(&block.basis, &m)? {
        Some(x) => x,
        None => {
            let (inv, det) = adjugate_inverse(&m)?;
            (det, inv.iter().map(|(_, e)| unit_constant(e.den())).collect())
        }
    };
    let bound = zagier_denominator(n);
    let mut counts: BTreeMap<Vec<BigRational>, (UPoly, usize)> = BTreeMap::new();
    for d in dens {
        counts.entry(d.coeffs().to_vec()).or_insert_with(|| (d.clone(), 0)).1 += 1;
    }
    let mut failures = 0;
    let mut denominators = Vec::new();
    for (_, (d, count)) in counts {
        if !d.divides(&bound)? {
            failures += count;
        }
        denominators.push((d, count));
    }
    denominators.sort_by_key(|(d, _)| (d.degree(), d.to_string()));
    let (determinant_factors, _) = factor_one_minus_q_powers(&det);
    Ok(ZagierReport { n, determinant: det, determinant_factors, bound, denominators, failures, verdict: failures == 0 })
}

/// When `m[r][c]` depends only on `basis[r]⁻¹ ∘ basis[c]` (basis[0] the
/// identity), so does `m⁻¹`, and one column of the adjugate carries every
/// distinct entry, each occurring `|basis|` times. Returns the
/// determinant and one reduced denominator per entry of `m⁻¹`, or `None`
/// if `m` is not of this form.
fn group_inverse_denominators(basis: &[Vec<u32>], m: &Matrix<UPoly>) -> Result<Option<(UPoly, Vec<UPoly>)>> {
    let perms = basis.iter().map(|w| Permutation::new(w.clone())).collect::<Result<Vec<_>>>()?;
    if perms.first() != Some(&Permutation::identity(perms[0].n())) {
        return Ok(None);
    }
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let d = perms.len();
    let is_group = (0..d).into_par_iter().all(|r| {
        let ri = perms[r].inverse();
        (0..d).all(|c| {
            let w = ri.compose(&perms[c]).expect("same size");
            index.get(&w).is_some_and(|&k| m[(r, c)] == m[(0, k)])
        })
    });
    if !is_group {
        return Ok(None);
    }
    let mi = m.try_map(|p| {
        let (ip, l) = p.to_int();
        if l.is_one() { Ok(ip) } else { Err(Error::Invalid("non-integral entry".into())) }
    });
    let Ok(mi) = mi else {
        return Ok(None);
    };
    let (det, column) = modular::adjugate_column(&mi, 0)?;
    let dens = reduced_denominators(&det, &column)?;
    let all = dens.iter().flat_map(|x| std::iter::repeat_n(x.clone(), d)).collect();
    Ok(Some((UPoly::from_int(&det), all)))
}

/// Denominators (constant term 1) of `y_k / det` in lowest terms. When
/// `det` is `± ∏ (1 − q^k)^{e_k}` only its cyclotomic factors are tried.
fn reduced_denominators(det: &IntPoly, ys: &[IntPoly]) -> Result<Vec<UPoly>> {
    let detu = UPoly::from_int(det);
    let (factors, rest) = factor_one_minus_q_powers(&detu);
    if rest.degree() != Some(0) {
        return ys
            .par_iter()
            .map(|y| Ok(unit_constant(URat::new(UPoly::from_int(y), detu.clone())?.den())))
            .collect();
    }
    let mut mult: BTreeMap<usize, u32> = BTreeMap::new();
    for &(k, e) in &factors {
        for dd in (1..=k).filter(|dd| k % dd == 0) {
            *mult.entry(dd).or_default() += e;
        }
    }
    let cyclo: Vec<(IntPoly, u32)> = mult.iter().map(|(&dd, &e)| (IntPoly::cyclotomic(dd), e)).collect();
    Ok(ys
        .par_iter()
        .map(|y| {
            let mut den = IntPoly::one();
            let mut rest = y.clone();
            for (phi, e) in &cyclo {
                let (v, r) = rest.strip_factor(phi, *e);
                rest = r;
                for _ in v..*e {
                    den = den.mul(phi);
                }
            }
            unit_constant(&UPoly::from_int(&den))
        })
        .collect())
}

/// For `n ≤ 3`: computes `adj M_[n]` over the multiparameter ring and
/// checks `M · adj M = det M · I` with `det M` the closed form. Every
/// entry of `M⁻¹` then has denominator dividing the closed form.
pub fn multiparametric_inverse_check(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    check_limit("n for multiparametric inverse", n, 3)?;
    let set: Vec<u32> = (1..=n as u32).collect();
    let m = gram_block(&set)?.matrix;
    let (det, adj) = adjugate(&m)?;
    let expect = det_closed_form(&set)?.expand()?;
    let prod = m.mul(&adj)?;
    let ok = prod.iter().all(|((r, c), e)| if r == c { *e == expect } else { e.is_zero() });
    Ok(ok && det == expect)
}

/// A point with `q[j][i] = conj(q[i][j])` and `|q[i][j]| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianPoint(Point);

impl HermitianPoint {
    pub fn new(point: Point) -> Result<Self> {
        for (v, z) in &point {
            match point.get(&v.transpose()) {
                Some(w) if *w == z.conj() => {}
                _ => return Err(Error::NotHermitian(*v)),
            }
            if z.norm_sqr() >= BigRational::one() {
                return Err(Error::DiscViolation(*v));
            }
        }
        Ok(Self(point))
    }

    /// All variables zero over the support of `indices`.
    pub fn zero(indices: &[u32]) -> Self {
        let s = sample::support(indices);
        Self(s.iter().flat_map(|&a| s.iter().map(move |&b| (VarId::new(a, b), GaussianRational::zero()))).collect())
    }

    pub fn sample(indices: &[u32], rng: &mut sample::ChaCha8Rng) -> Self {
        Self(sample::hermitian_point(indices, rng))
    }

    pub fn point(&self) -> &Point {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PosdefResult {
    pub verdict: bool,
    pub minors: Vec<BigRational>,
}

/// Sylvester's criterion for `M_I` at a Hermitian point.
pub fn posdef_check(multiset: &[u32], p: &HermitianPoint) -> Result<PosdefResult> {
    let sorted = validate(multiset)?;
    check_limit("|I| for posdef_check", sorted.len(), MAX_POSDEF)?;
    let m = gram_block_eval(&sorted, p.point())?;
    let minors = leading_principal_minors(&m)?
        .into_iter()
        .enumerate()
        .map(|(k, z)| if z.im.is_zero() { Ok(z.re) } else { Err(Error::NonRealMinor(k + 1)) })
        .collect::<Result<Vec<_>>>()?;
    Ok(PosdefResult { verdict: minors.iter().all(Signed::is_positive), minors })
}

/// Every multiset of size `1..=max_size` over `1..=max_value`, shortest first.
pub fn multisets(max_size: usize, max_value: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for m in &layer {
            let lo = m.last().copied().unwrap_or(1);
            for v in lo..=max_value {
                let mut w = m.clone();
                w.push(v);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn half() -> GaussianRational {
        GaussianRational::from_fractions(1, 2, 0, 1)
    }

    #[test]
    fn bases() {
        assert_eq!(multiset_permutations(&[1, 2]).unwrap(), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(
            multiset_permutations(&[1, 1, 2]).unwrap(),
            vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]
        );
        assert!(matches!(multiset_permutations(&[1; 9]), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn small_blocks() {
        assert!(gram_block(&[]).unwrap().matrix[(0, 0)].is_one());
        assert!(gram_block(&[4]).unwrap().matrix[(0, 0)].is_one());
        assert_eq!(gram_block(&[1, 1]).unwrap().matrix[(0, 0)], p("1 + q[1][1]"));
        let m = gram_block(&[2, 1]).unwrap();
        assert_eq!(m.basis, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(m.matrix[(0, 1)], MPoly::q(2, 1));
        assert_eq!(m.matrix[(1, 0)], MPoly::q(1, 2));
        assert!(m.is_tilde_symmetric());
        assert!(gram_block(&[0]).is_err());
        assert!(matches!(gram_block(&[1; 7]), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn sets_match_chamber_forms() {
        let m = gram_block(&[1, 2, 3]).unwrap();
        let g = gamma_matrix(3).unwrap();
        assert_eq!(m.matrix, g.transpose());
        assert_eq!(m.matrix[(0, 1)], MPoly::q(3, 2));
        assert_eq!(m.matrix[(5, 0)], p("q[1][2]*q[1][3]*q[2][3]"));
    }

    #[test]
    fn restriction_agrees() {
        assert_eq!(gram_block_via_restriction(&[1, 1]).unwrap().matrix[(0, 0)], p("1 + q[1][1]"));
        for ms in [vec![1, 1, 2], vec![1, 2, 3], vec![2, 2, 2], vec![1, 2, 2, 5]] {
            assert_eq!(gram_block_via_restriction(&ms).unwrap(), gram_block(&ms).unwrap());
        }
    }

    #[test]
    fn evaluated_block_matches_symbolic() {
        let ms = [1, 2, 2, 3];
        let pt = sample::gaussian_point(&ms, &mut sample::rng(3));
        assert_eq!(gram_block_eval(&ms, &pt).unwrap(), gram_block(&ms).unwrap().eval(&pt).unwrap());
    }

    #[test]
    fn determinants() {
        let r = block_determinant(&[1, 2], DetMode::Symbolic, 10, 0).unwrap();
        assert_eq!(r.symbolic.unwrap(), p("1 - q[1][2]*q[2][1]"));
        assert!(r.verdict);
        assert!(block_determinant(&[1, 2, 3], DetMode::Symbolic, 10, 0).unwrap().verdict);
        let r = block_determinant(&[1, 1], DetMode::Symbolic, 10, 0).unwrap();
        assert_eq!(r.symbolic.unwrap(), p("1 + q[1][1]"));
        assert!(r.verdict && r.samples.len() == 10);
        let r = block_determinant(&[1, 2, 3], DetMode::Evaluated, 12, 5).unwrap();
        assert!(r.verdict && r.samples.len() == 12);
        assert_eq!(
            block_determinant(&[1, 1, 2], DetMode::Evaluated, 9, 0),
            Err(Error::SampleCountTooSmall { got: 9, min: 10 })
        );
        assert!(matches!(block_determinant(&[1; 5], DetMode::Symbolic, 10, 0), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn zagier_small() {
        assert_eq!(zagier_denominator(2), UPoly::one_minus_q_pow(2));
        assert_eq!(
            zagier_denominator(3),
            &UPoly::one_minus_q_pow(2).pow(2) * &UPoly::one_minus_q_pow(6)
        );
        let r = zagier_check(2).unwrap();
        assert!(r.verdict);
        assert_eq!(r.determinant, UPoly::one_minus_q_pow(2));
        let dens: Vec<String> = r.denominators.iter().map(|(d, _)| d.to_string()).collect();
        assert_eq!(dens, vec!["1 - q^2"]);
        let r = zagier_check(3).unwrap();
        assert!(r.verdict);
        assert_eq!(r.denominators.iter().map(|(_, c)| c).sum::<usize>(), 36);
        assert_eq!(r.determinant_factors, vec![(6, 1), (2, 6)]);
    }

    #[test]
    fn factoring() {
        let x = &UPoly::one_minus_q_pow(4).pow(2) * &UPoly::one_minus_q_pow(3);
        let (f, rest) = factor_one_minus_q_powers(&x);
        assert_eq!(f, vec![(4, 2), (3, 1)]);
        assert!(rest.is_one());
        assert_eq!(one_minus_q_product_string(&f), "(1 - q^4)^2 * (1 - q^3)");
        let (f, rest) = factor_one_minus_q_powers(&UPoly::from_ints(&[1, 1]));
        assert!(f.is_empty() && rest == UPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn multiparametric_inverse() {
        for n in 1..=3 {
            assert!(multiparametric_inverse_check(n).unwrap());
        }
    }

    #[test]
    fn hermitian_validation() {
        let v12 = VarId::new(1, 2);
        let v21 = VarId::new(2, 1);
        let ok: Point = [(v12, half()), (v21, half())].into();
        assert!(HermitianPoint::new(ok).is_ok());
        let z = GaussianRational::from_fractions(1, 3, 1, 5);
        let bad: Point = [(v12, z.clone()), (v21, z.clone())].into();
        assert!(matches!(HermitianPoint::new(bad), Err(Error::NotHermitian(_))));
        let big = GaussianRational::from_fractions(3, 5, 4, 5);
        let out: Point = [(v12, big.clone()), (v21, big.conj())].into();
        assert!(matches!(HermitianPoint::new(out), Err(Error::DiscViolation(_))));
    }

    #[test]
    fn positivity_examples() {
        let r = posdef_check(&[1, 2, 3], &HermitianPoint::zero(&[1, 2, 3])).unwrap();
        assert!(r.verdict && r.minors.iter().all(One::is_one));
        let pt: Point = [(VarId::new(1, 2), half()), (VarId::new(2, 1), half())].into();
        let r = posdef_check(&[1, 2], &HermitianPoint::new(pt).unwrap()).unwrap();
        assert_eq!(r.minors, vec![BigRational::one(), BigRational::new(3.into(), 4.into())]);
        let z = GaussianRational::from_fractions(1, 3, 1, 5);
        let mut pt = Point::new();
        for i in 1..=3u32 {
            for j in i + 1..=3 {
                pt.insert(VarId::new(i, j), z.clone());
                pt.insert(VarId::new(j, i), z.conj());
            }
        }
        let r = posdef_check(&[1, 2, 3], &HermitianPoint::new(pt).unwrap()).unwrap();
        assert!(r.verdict && r.minors.len() == 6);
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(2, 2), vec![vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(multisets(4, 4).len(), 4 + 10 + 20 + 35);
    }
}
