//! Finitely presented associative algebras: generators, noncommutative
//! relations, and evaluation of free-algebra elements on matrices.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::{string::String, vec::Vec};
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{PolyMatrix, Variables};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("relation {relation} uses generator index {index}, but only {count} are declared")]
    UndeclaredGenerator {
        relation: usize,
        index: usize,
        count: usize,
    },
    #[error("image {index} is {found}x{found}, expected {expected}x{expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("word uses generator {index}, but only {count} images were supplied")]
    MissingImage { index: usize, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSymbol {
    pub name: String,
    pub index: usize,
}

/// A word in the generators; the empty word is the identity.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<usize>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        FreeWord(letters)
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

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the free algebra: a finite combination of words with
/// nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<FreeWord, BigRational>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(FreeWord::empty())
    }

    pub fn word(w: FreeWord) -> Self {
        Self::from_terms([(w, BigRational::one())])
    }

    pub fn letter(index: usize) -> Self {
        Self::word(FreeWord(alloc::vec![index]))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([(FreeWord::empty(), c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FreeWord, BigRational)>) -> Self {
        let mut out = FreeElement::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: FreeWord, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &FreeWord) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest generator index used, if any.
    pub fn max_letter(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FreeElement::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    /// Render with the given generator names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Render(self, names)
    }
}

/// Distributive concatenation product.
pub fn free_multiply(a: &FreeElement, b: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            out.add_term(wa.concat(wb), ca * cb);
        }
    }
    out
}

struct Render<'a>(&'a FreeElement, &'a [String]);

impl fmt::Display for Render<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Render(e, names) = self;
        if e.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in e.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if w.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            let mut i = 0;
            while i < w.0.len() {
                let letter = w.0[i];
                let run = w.0[i..].iter().take_while(|&&l| l == letter).count();
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                match names.get(letter) {
                    Some(n) => f.write_str(n)?,
                    None => write!(f, "g{letter}")?,
                }
                if run > 1 {
                    write!(f, "^{run}")?;
                }
                i += run;
            }
        }
        Ok(())
    }
}

/// `k<X_1..X_s> / <f_1..f_t>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    relations: Vec<FreeElement>,
    name: Option<String>,
}

impl Presentation {
    pub fn new(
        generator_names: impl IntoIterator<Item = String>,
        relations: Vec<FreeElement>,
        name: Option<String>,
    ) -> Result<Self, PresentationError> {
        let mut generators: Vec<GeneratorSymbol> = Vec::new();
        for name in generator_names {
            if generators.iter().any(|g| g.name == name) {
                return Err(PresentationError::DuplicateGenerator(name));
            }
            let index = generators.len();
            generators.push(GeneratorSymbol { name, index });
        }
        for (r, rel) in relations.iter().enumerate() {
            if let Some(index) = rel.max_letter().filter(|&m| m >= generators.len()) {
                return Err(PresentationError::UndeclaredGenerator {
                    relation: r,
                    index,
                    count: generators.len(),
                });
            }
        }
        Ok(Presentation {
            generators,
            relations,
            name,
        })
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    /// The same presentation with one more relation.
    pub fn with_relation(&self, rel: FreeElement) -> Result<Self, PresentationError> {
        let mut rels = self.relations.clone();
        rels.push(rel);
        Presentation::new(self.generator_names(), rels, self.name.clone())
    }
}

/// Evaluate `e` by sending generator `l` to `images[l]`. The empty word goes
/// to the identity matrix.
pub fn substitute(
    e: &FreeElement,
    images: &[PolyMatrix],
    vars: &Variables,
    dim: usize,
) -> Result<PolyMatrix, PresentationError> {
    for (index, m) in images.iter().enumerate() {
        if m.dim() != dim {
            return Err(PresentationError::DimensionMismatch {
                index,
                expected: dim,
                found: m.dim(),
            });
        }
    }
    if let Some(index) = e.max_letter().filter(|&m| m >= images.len()) {
        return Err(PresentationError::MissingImage {
            index,
            count: images.len(),
        });
    }
    let mut acc = PolyMatrix::zero(vars, dim);
    for (w, c) in e.terms() {
        let mut prod = PolyMatrix::identity(vars, dim);
        for &l in w.letters() {
            prod = prod.mul(&images[l]);
        }
        acc = acc.add(&prod.scale(c));
    }
    Ok(acc)
}
