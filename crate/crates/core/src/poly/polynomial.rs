use alloc::{vec, vec::Vec};
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Monomial, MonomialOrder, TermOrder, VariableId, Variables};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
}

/// A polynomial with rational coefficients.
///
/// Terms are kept sorted by descending graded-reverse-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Variables,
    terms: Vec<(Monomial, BigRational)>,
}

const CANONICAL: TermOrder = TermOrder::Plain(super::BlockScheme::GrevLex);

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(vars: &Variables) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &Variables, c: BigRational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(vars.len()), c)]
        };
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// The variable at position `index` of `vars`.
    pub fn var(vars: &Variables, index: usize) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: vec![(Monomial::variable(vars.len(), index, 1), BigRational::one())],
        }
    }

    pub fn variable(vars: &Variables, id: &VariableId) -> Option<Self> {
        vars.index_of(id).map(|i| Self::var(vars, i))
    }

    pub fn from_terms(
        vars: &Variables,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        debug_assert!(terms.iter().all(|(m, _)| m.nvars() == vars.len()));
        terms.sort_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        Polynomial {
            vars: vars.clone(),
            terms: combine_sorted(terms),
        }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    /// Terms in descending canonical (graded-reverse-lex) order.
    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
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

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.involves(index))
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, BigRational), PolyError> {
        let t = ord.compile(&self.vars);
        self.leading_term_under(&t)
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_term_under(&self, ord: &TermOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        // multiplication by a monomial preserves any monomial order
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divide by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &TermOrder) -> Self {
        match self.leading_term_under(ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Clear denominators and strip the integer content; the leading
    /// coefficient under `ord` becomes positive.
    pub fn primitive(&self, ord: &TermOrder) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let denom_lcm = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| (c * &denom_lcm).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading_term_under(ord).unwrap().1.is_negative() {
            g = -g;
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), c)| (m.clone(), BigRational::from_integer(c / &g)))
                .collect(),
        }
    }

    /// Move into a variable set that contains every variable this polynomial
    /// actually uses.
    pub fn embed(&self, to: &Variables) -> Option<Self> {
        if *to == self.vars {
            return Some(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Some((m.remap(&self.vars, to)?, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_terms(to, terms))
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len(), "evaluation point has wrong arity");
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Total order used to sort and deduplicate polynomials deterministically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let c = CANONICAL
                .cmp(&a.0, &b.0)
                .then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    /// Multivariate division. Repeatedly takes the largest term that some
    /// divisor's leading monomial divides and cancels it with the first such
    /// divisor. Returns the quotients (one per divisor) and the remainder.
    pub fn divide(&self, divisors: &[Polynomial], ord: &MonomialOrder) -> (Vec<Polynomial>, Polynomial) {
        let t = ord.compile(&self.vars);
        let leads: Vec<(Monomial, BigRational)> = divisors
            .iter()
            .map(|d| {
                assert_eq!(d.vars, self.vars, "divisor over a different variable set");
                let (m, c) = d.leading_term_under(&t).expect("divisors must be nonzero");
                (m.clone(), c.clone())
            })
            .collect();
        let sorted_divs: Vec<Vec<(Monomial, BigRational)>> =
            divisors.iter().map(|d| ascending(d, &t)).collect();

        let mut quotients: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); divisors.len()];
        let mut rem = Vec::new();
        let mut p = ascending(self, &t);
        while let Some((m, c)) = p.pop() {
            match leads.iter().position(|(lm, _)| lm.divides(&m)) {
                Some(k) => {
                    let q_m = m.div(&leads[k].0).unwrap();
                    let q_c = &c / &leads[k].1;
                    let div = &sorted_divs[k];
                    let scaled = div[..div.len() - 1]
                        .iter()
                        .map(|(dm, dc)| (dm.mul(&q_m), -(dc * &q_c)));
                    p = merge_ascending(core::mem::take(&mut p), scaled.collect(), &t);
                    quotients[k].push((q_m, q_c));
                }
                None => rem.push((m, c)),
            }
        }
        let quotients = quotients
            .into_iter()
            .map(|q| Polynomial::from_terms(&self.vars, q))
            .collect();
        (quotients, Polynomial::from_terms(&self.vars, rem))
    }

    /// Remainder of [`Polynomial::divide`].
    pub fn reduce(&self, divisors: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
        self.divide(divisors, ord).1
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.divide(core::slice::from_ref(g), &MonomialOrder::GrevLex);
        r.is_zero().then(|| q.into_iter().next().unwrap())
    }
}

fn ascending(p: &Polynomial, t: &TermOrder) -> Vec<(Monomial, BigRational)> {
    let mut v = p.terms.clone();
    v.sort_by(|a, b| t.cmp(&a.0, &b.0));
    v
}

fn merge_ascending(
    a: Vec<(Monomial, BigRational)>,
    b: Vec<(Monomial, BigRational)>,
    t: &TermOrder,
) -> Vec<(Monomial, BigRational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => match t.cmp(&x.0, &y.0) {
                Ordering::Less => out.push(ia.next().unwrap()),
                Ordering::Greater => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (m, c1) = ia.next().unwrap();
                    let (_, c2) = ib.next().unwrap();
                    let c = c1 + c2;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            },
            (Some(_), None) => out.extend(ia.by_ref()),
            (None, Some(_)) => out.extend(ib.by_ref()),
            (None, None) => break,
        }
    }
    out
}

fn combine_sorted(terms: Vec<(Monomial, BigRational)>) -> Vec<(Monomial, BigRational)> {
    let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if matches!(out.last(), Some((_, c)) if c.is_zero()) {
        out.pop();
    }
    out
}

fn add_terms(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    assert_eq!(a.vars, b.vars, "polynomials over different variable sets");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match CANONICAL.cmp(ma, mb) {
            Ordering::Greater => {
                out.push((ma.clone(), ca.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((mb.clone(), if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((ma.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(
        b.terms[j..]
            .iter()
            .map(|(m, c)| (m.clone(), if negate_b { -c } else { c.clone() })),
    );
    Polynomial {
        vars: a.vars.clone(),
        terms: out,
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        add_terms(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        add_terms(self, rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "polynomials over different variable sets");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(&self.vars, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{}", self.vars.get(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
