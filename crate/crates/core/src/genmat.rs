//! Generic matrices: the polynomial ring of matrix entries, the relation
//! ideal of a presentation, trace generators, the standard identity and the
//! irreducibility set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::{vec, vec::Vec};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::budget::{Budget, LimitExceeded};
use crate::groebner::Ideal;
use crate::poly::{Monomial, PolyMatrix, Polynomial, VariableId, Variables};
use crate::presentation::{substitute, Presentation, PresentationError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenmatError {
    #[error("matrix size must be at least {min}, got {found}")]
    DimensionTooSmall { min: usize, found: usize },
    #[error("presentation has {presentation} generators but the space has {space}")]
    GeneratorCountMismatch { presentation: usize, space: usize },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// `s` generic `n x n` matrices over `Q[x[i,j,l]]`.
#[derive(Clone, Debug)]
pub struct GenericMatrixSpace {
    n: usize,
    s: usize,
    vars: Variables,
    matrices: Vec<PolyMatrix>,
}

pub fn build_generic_space(n: usize, s: usize) -> Result<GenericMatrixSpace, GenmatError> {
    if n == 0 {
        return Err(GenmatError::DimensionTooSmall { min: 1, found: 0 });
    }
    let id = |i: usize, j: usize, l: usize| VariableId::entry(i as u32 + 1, j as u32 + 1, l as u32 + 1);
    let vars = Variables::new(
        (0..s).flat_map(|l| (0..n).flat_map(move |i| (0..n).map(move |j| id(i, j, l)))),
    );
    let matrices = (0..s)
        .map(|l| {
            PolyMatrix::from_rows(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| Polynomial::variable(&vars, &id(i, j, l)).unwrap())
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(GenericMatrixSpace { n, s, vars, matrices })
}

impl GenericMatrixSpace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.matrices
    }

    /// Position of `x[i,j,l]` (0-based arguments) in [`Self::vars`].
    pub fn entry_index(&self, row: usize, col: usize, generator: usize) -> usize {
        self.vars
            .index_of(&VariableId::entry(row as u32 + 1, col as u32 + 1, generator as u32 + 1))
            .expect("entry outside the space")
    }

    /// The product of generic matrices spelled by `word`.
    pub fn word_matrix(&self, word: &[usize]) -> PolyMatrix {
        word.iter().fold(PolyMatrix::identity(&self.vars, self.n), |acc, &l| {
            acc.mul(&self.matrices[l])
        })
    }
}

/// The ideal generated by every entry of every relation evaluated at the
/// generic matrices.
pub fn relations_ideal(p: &Presentation, sp: &GenericMatrixSpace) -> Result<Ideal, GenmatError> {
    if p.generator_count() != sp.s {
        return Err(GenmatError::GeneratorCountMismatch {
            presentation: p.generator_count(),
            space: sp.s,
        });
    }
    let mut gens = Vec::new();
    for rel in p.relations() {
        let m = substitute(rel, &sp.matrices, &sp.vars, sp.n)?;
        gens.extend(m.entries().iter().filter(|e| !e.is_zero()).cloned());
    }
    Ok(Ideal::new(&sp.vars, gens))
}

/// `s_m(A_1..A_m) = sum over permutations of sgn * A_σ1 ... A_σm`.
///
/// Expands along the first factor and memoizes by the subset of remaining
/// arguments, so the cost is `m 2^m` products instead of `m m!`.
pub fn standard_identity(args: &[PolyMatrix]) -> PolyMatrix {
    assert!(!args.is_empty(), "standard identity needs at least one argument");
    assert!(args.len() < 32, "too many arguments");
    let dim = args[0].dim();
    assert!(args.iter().all(|a| a.dim() == dim), "arguments must have equal size");
    let vars = args[0].entries()[0].vars().clone();
    let full: u32 = (1u32 << args.len()) - 1;
    let mut memo: BTreeMap<u32, PolyMatrix> = BTreeMap::new();
    memo.insert(0, PolyMatrix::identity(&vars, dim));
    // subsets in order of size so every smaller subset is ready
    let mut masks: Vec<u32> = (1..=full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let mut acc = PolyMatrix::zero(&vars, dim);
        let mut position = 0;
        for (i, a) in args.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let term = a.mul(&memo[&(mask & !(1 << i))]);
            acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            position += 1;
        }
        memo.insert(mask, acc);
    }
    memo.remove(&full).unwrap()
}

/// Largest word length `L` with `L < n sqrt(2n^2/(n-1) + 1/4) + n/2 - 2`.
///
/// Exact: with `a = L - n/2 + 2` and `q = 2n^2/(n-1) + 1/4`, `L` is admissible
/// iff `a < 0` or `a^2 < n^2 q`.
pub fn length_bound(n: usize) -> Result<usize, GenmatError> {
    if n < 2 {
        return Err(GenmatError::DimensionTooSmall { min: 2, found: n });
    }
    let big = |v: usize| BigRational::from_integer(BigInt::from(v));
    let nn = big(n);
    let q = &(&big(2) * &nn * &nn) / &big(n - 1) + BigRational::new(1.into(), 4.into());
    let rhs = &nn * &nn * q;
    let admissible = |l: usize| {
        let a = big(l) - &nn / big(2) + big(2);
        a < BigRational::zero() || &a * &a < rhs
    };
    let mut l = 0;
    while admissible(l + 1) {
        l += 1;
    }
    Ok(l)
}

/// A nonempty word up to rotation, stored as its least rotation.
/// Ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord(Vec<usize>);

impl CyclicWord {
    pub fn new(letters: &[usize]) -> Option<Self> {
        if letters.is_empty() {
            return None;
        }
        Some(CyclicWord(least_rotation(letters)))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn least_rotation(w: &[usize]) -> Vec<usize> {
    (0..w.len())
        .map(|r| {
            let mut v = w[r..].to_vec();
            v.extend_from_slice(&w[..r]);
            v
        })
        .min()
        .unwrap_or_default()
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `x1^2*x2` with generic generator names `x1..xs`.
pub struct WordDisplay<'a>(pub &'a [usize]);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.0;
        if w.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < w.len() {
            let run = w[i..].iter().take_while(|&&l| l == w[i]).count();
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}", w[i] + 1)?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        WordDisplay(&self.0).fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceGenerator {
    pub word: CyclicWord,
    pub value: Polynomial,
}

impl fmt::Display for TraceGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tr({})", self.word)
    }
}

/// One generator per necklace of length `1..=n^2`, in canonical order.
pub fn trace_generators(sp: &GenericMatrixSpace) -> Vec<TraceGenerator> {
    let mut engine = TraceEngine::new(sp);
    necklaces(sp.s, sp.n * sp.n)
        .into_iter()
        .map(|word| {
            let value = engine.trace(&word).to_polynomial(&sp.vars);
            TraceGenerator { word, value }
        })
        .collect()
}

/// All necklaces over `s` letters with length in `1..=max_len`, sorted.
pub fn necklaces(s: usize, max_len: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    if s == 0 {
        return out;
    }
    for len in 1..=max_len {
        for w in words_of_length(s, len) {
            if least_rotation(&w) == w {
                out.push(CyclicWord(w));
            }
        }
    }
    out
}

fn words_of_length(s: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..s).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// All words of length `0..=max_len`, shortest first, lexicographic within a
/// length.
pub fn words_up_to(s: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    if s == 0 {
        return out;
    }
    for len in 1..=max_len {
        out.extend(words_of_length(s, len));
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct SSetOptions {
    /// Replace the computed maximal word length.
    pub length_bound_override: Option<usize>,
}

/// The trace polynomials whose common zeros are exactly the tuples that do
/// not generate the full matrix algebra.
#[derive(Clone, Debug)]
pub struct IrreducibilitySet {
    pub polynomials: Vec<Polynomial>,
    /// The words `(M0, M1, ..)` that first produced each polynomial.
    pub provenance: Vec<Vec<Vec<usize>>>,
    /// Maximal word length used.
    pub length_bound: usize,
    /// Number of tuples before any pruning.
    pub raw_tuples: u128,
    /// Number of tuples actually expanded.
    pub evaluated_tuples: u64,
}

impl IrreducibilitySet {
    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }
}

/// A signed integer combination of necklaces.
type NecklaceSum = Vec<(CyclicWord, i64)>;

/// Build the irreducibility set. For `n = 1` every representation is
/// irreducible and the set is `{1}`.
///
/// Tuples with a repeated argument are skipped, the arguments of the
/// standard identity are taken in increasing order only (other orders
/// differ by a sign), and results are deduplicated up to sign first as
/// combinations of necklaces and then as polynomials.
pub fn irreducibility_set(
    sp: &GenericMatrixSpace,
    options: &SSetOptions,
    budget: &Budget,
) -> Result<IrreducibilitySet, LimitExceeded> {
    if sp.n == 1 {
        return Ok(IrreducibilitySet {
            polynomials: vec![Polynomial::one(&sp.vars)],
            provenance: vec![vec![Vec::new()]],
            length_bound: 0,
            raw_tuples: 1,
            evaluated_tuples: 1,
        });
    }
    let bound = match options.length_bound_override {
        Some(l) => l,
        None => length_bound(sp.n).expect("n >= 2"),
    };
    let k = 2 * (sp.n - 1);
    let words = words_up_to(sp.s, bound);
    let raw_tuples = (words.len() as u128).saturating_pow(k as u32 + 1);
    budget.check_degree(((k + 1) * bound) as u32)?;

    let perms = signed_permutations(k);
    let mut seen: BTreeSet<NecklaceSum> = BTreeSet::new();
    let mut symbolic: Vec<(NecklaceSum, Vec<Vec<usize>>)> = Vec::new();
    let mut evaluated = 0u64;
    let mut idx = vec![0usize; k];
    for m0 in &words {
        // strictly increasing index tuples into `words`
        if !first_combination(&mut idx, words.len()) {
            break;
        }
        loop {
            evaluated += 1;
            if evaluated.is_multiple_of(4096) {
                budget.check_time()?;
            }
            let args: Vec<&Vec<usize>> = idx.iter().map(|&i| &words[i]).collect();
            let mut combo: BTreeMap<CyclicWord, i64> = BTreeMap::new();
            for (perm, sign) in &perms {
                let mut w = m0.clone();
                for &p in perm {
                    w.extend_from_slice(args[p]);
                }
                match CyclicWord::new(&w) {
                    Some(c) => *combo.entry(c).or_insert(0) += sign,
                    // every word empty: the trace of the identity
                    None => *combo.entry(CyclicWord(Vec::new())).or_insert(0) += sign,
                }
            }
            let mut combo: Vec<(CyclicWord, i64)> = combo.into_iter().filter(|(_, c)| *c != 0).collect();
            if !combo.is_empty() {
                if combo[0].1 < 0 {
                    combo.iter_mut().for_each(|(_, c)| *c = -*c);
                }
                if seen.insert(combo.clone()) {
                    let mut tuple = vec![m0.clone()];
                    tuple.extend(args.into_iter().cloned());
                    symbolic.push((combo, tuple));
                }
            }
            if !next_combination(&mut idx, words.len()) {
                break;
            }
        }
    }

    let mut engine = TraceEngine::new(sp);
    let mut evaluated_polys: Vec<(Polynomial, Vec<Vec<usize>>)> = Vec::new();
    for (i, (combo, tuple)) in symbolic.into_iter().enumerate() {
        if i % 64 == 0 {
            budget.check_time()?;
        }
        let mut acc = IntPoly::default();
        for (word, c) in &combo {
            acc = acc.add(&engine.trace(word).scale(*c as i128));
        }
        if acc.terms.is_empty() {
            continue;
        }
        let mut poly = acc.to_polynomial(&sp.vars);
        let lead_negative = poly.terms()[0].1 < BigRational::zero();
        if lead_negative {
            poly = -&poly;
        }
        evaluated_polys.push((poly, tuple));
    }
    // canonical order: degree, size, then the canonical polynomial order;
    // stable so the first producing tuple is kept on ties
    evaluated_polys.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then(a.0.len().cmp(&b.0.len()))
            .then_with(|| a.0.canonical_cmp(&b.0))
    });
    evaluated_polys.dedup_by(|a, b| a.0 == b.0);
    let (polynomials, provenance) = evaluated_polys.into_iter().unzip();
    Ok(IrreducibilitySet {
        polynomials,
        provenance,
        length_bound: bound,
        raw_tuples,
        evaluated_tuples: evaluated,
    })
}

fn first_combination(idx: &mut [usize], n: usize) -> bool {
    if idx.len() > n {
        return false;
    }
    for (i, v) in idx.iter_mut().enumerate() {
        *v = i;
    }
    true
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All permutations of `0..k` with their signs.
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in signed_permutations(k - 1) {
        // insert k-1 at every position; moving it left past j elements flips j times
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, k - 1);
            let flips = perm.len() - pos;
            out.push((p, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

/// Integer-coefficient polynomial used while expanding traces of words;
/// terms sorted ascending by monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct IntPoly {
    terms: Vec<(Monomial, i128)>,
}

impl IntPoly {
    fn from_unsorted(mut terms: Vec<(Monomial, i128)>) -> Self {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, i128)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.checked_add(c).expect("trace coefficient overflow")
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        IntPoly { terms: out }
    }

    fn add(&self, other: &Self) -> Self {
        let mut v = self.terms.clone();
        v.extend(other.terms.iter().cloned());
        Self::from_unsorted(v)
    }

    fn scale(&self, c: i128) -> Self {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.checked_mul(c).expect("trace coefficient overflow")))
                .filter(|(_, a)| *a != 0)
                .collect(),
        }
    }

    fn to_polynomial(&self, vars: &Variables) -> Polynomial {
        Polynomial::from_terms(
            vars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(BigInt::from(*c)))),
        )
    }
}

/// Memoized traces of words of generic matrices, keyed by necklace. Word
/// matrices are memoized for the halves that traces are split into.
struct TraceEngine<'a> {
    sp: &'a GenericMatrixSpace,
    matrices: BTreeMap<Vec<usize>, Vec<IntPoly>>,
    traces: BTreeMap<Vec<usize>, IntPoly>,
}

impl<'a> TraceEngine<'a> {
    fn new(sp: &'a GenericMatrixSpace) -> Self {
        TraceEngine {
            sp,
            matrices: BTreeMap::new(),
            traces: BTreeMap::new(),
        }
    }

    fn matrix(&mut self, word: &[usize]) -> Vec<IntPoly> {
        if let Some(m) = self.matrices.get(word) {
            return m.clone();
        }
        let n = self.sp.n;
        let nv = self.sp.vars.len();
        let m = match word.split_last() {
            None => (0..n * n)
                .map(|k| {
                    if k / n == k % n {
                        IntPoly {
                            terms: vec![(Monomial::one(nv), 1)],
                        }
                    } else {
                        IntPoly::default()
                    }
                })
                .collect(),
            Some((&l, prefix)) => {
                let a = self.matrix(prefix);
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        let mut terms = Vec::new();
                        for k in 0..n {
                            let x = Monomial::variable(nv, self.sp.entry_index(k, j, l), 1);
                            terms.extend(a[i * n + k].terms.iter().map(|(m, c)| (m.mul(&x), *c)));
                        }
                        out.push(IntPoly::from_unsorted(terms));
                    }
                }
                out
            }
        };
        self.matrices.insert(word.to_vec(), m.clone());
        m
    }

    /// Trace of the product spelled by a necklace (the empty necklace is the
    /// identity, trace `n`).
    fn trace(&mut self, word: &CyclicWord) -> IntPoly {
        if let Some(t) = self.traces.get(&word.0) {
            return t.clone();
        }
        let n = self.sp.n;
        let w = &word.0;
        let h = w.len() / 2;
        let a = self.matrix(&w[..h]);
        let b = self.matrix(&w[h..]);
        let mut terms = Vec::new();
        for i in 0..n {
            for k in 0..n {
                for (ma, ca) in &a[i * n + k].terms {
                    for (mb, cb) in &b[k * n + i].terms {
                        terms.push((ma.mul(mb), ca.checked_mul(*cb).expect("trace coefficient overflow")));
                    }
                }
            }
        }
        let t = IntPoly::from_unsorted(terms);
        self.traces.insert(w.clone(), t.clone());
        t
    }
}

/// Trace of the product of generic matrices spelled by `word`.
pub fn trace_of_word(sp: &GenericMatrixSpace, word: &[usize]) -> Polynomial {
    match CyclicWord::new(word) {
        Some(c) => TraceEngine::new(sp).trace(&c).to_polynomial(&sp.vars),
        None => Polynomial::constant(&sp.vars, BigRational::from_integer(BigInt::from(sp.n))),
    }
}

#[cfg(test)]
mod tests;
