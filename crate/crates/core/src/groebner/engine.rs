//! Fraction-free Buchberger engine.
//!
//! Inside the engine every polynomial has integer coefficients and its terms
//! are sorted by the working order, largest first. Reduction steps scale by
//! integers instead of dividing, and content is stripped periodically.

use alloc::{vec, vec::Vec};
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::budget::{Budget, LimitExceeded};
use crate::poly::{Monomial, Polynomial, TermOrder, Variables};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    /// Convert and scale to integer coefficients. Returns the polynomial and
    /// the factor `k` with `result = k * f`.
    pub fn from_polynomial(f: &Polynomial, ord: &TermOrder) -> (IntPoly, BigRational) {
        let denom = f
            .terms()
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Monomial, BigInt)> = f
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), (c * &denom).to_integer()))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        (IntPoly { terms }, BigRational::from_integer(denom))
    }

    pub fn to_polynomial(&self, vars: &Variables, scale: &BigRational) -> Polynomial {
        Polynomial::from_terms(
            vars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()) / scale)),
        )
    }

    /// Monic rational form.
    pub fn to_monic(&self, vars: &Variables) -> Polynomial {
        let lc = BigRational::from_integer(self.lc().clone());
        self.to_polynomial(vars, &lc)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Divide out the content and make the leading coefficient positive.
    /// Returns the divisor that was applied.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = content(self.terms.iter().map(|(_, c)| c));
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
        g
    }
}

fn content<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a * p - b * (m * q)`, both inputs sorted descending.
fn combine(
    p: &[(Monomial, BigInt)],
    a: &BigInt,
    q: &[(Monomial, BigInt)],
    m: &Monomial,
    b: &BigInt,
    ord: &TermOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let a_is_one = a.is_one();
    let mut i = 0;
    let mut j = 0;
    let mut qm: Option<Monomial> = q.first().map(|(t, _)| t.mul(m));
    while i < p.len() || j < q.len() {
        let take = match (p.get(i), &qm) {
            (Some((pm, _)), Some(qmono)) => ord.cmp(pm, qmono),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                let (pm, pc) = &p[i];
                out.push((pm.clone(), if a_is_one { pc.clone() } else { pc * a }));
                i += 1;
            }
            Ordering::Less => {
                out.push((qm.take().unwrap(), -(&q[j].1 * b)));
                j += 1;
                qm = q.get(j).map(|(t, _)| t.mul(m));
            }
            Ordering::Equal => {
                let c = if a_is_one {
                    &p[i].1 - &q[j].1 * b
                } else {
                    &p[i].1 * a - &q[j].1 * b
                };
                if !c.is_zero() {
                    out.push((qm.take().unwrap(), c));
                }
                i += 1;
                j += 1;
                qm = q.get(j).map(|(t, _)| t.mul(m));
            }
        }
    }
    out
}

/// Full reduction of `f` by `divisors` (largest reducible term first, first
/// applicable divisor). Returns `(r, k)` where `r / k` is the exact rational
/// remainder of `f`.
pub(crate) fn reduce(
    f: IntPoly,
    divisors: &[&IntPoly],
    ord: &TermOrder,
    budget: &Budget,
) -> Result<(IntPoly, BigRational), LimitExceeded> {
    let mut scale = BigRational::one();
    let mut p = f.terms;
    let mut head = 0usize;
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut steps = 0u32;
    while head < p.len() {
        let (m, c) = &p[head];
        let Some(g) = divisors.iter().find(|g| g.lm().divides(m)) else {
            rem.push(p[head].clone());
            head += 1;
            continue;
        };
        let shift = m.div(g.lm()).unwrap();
        let d = c.gcd(g.lc());
        let mut a = g.lc() / &d;
        let mut b = c / &d;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        p = combine(&p[head + 1..], &a, &g.terms[1..], &shift, &b, ord);
        head = 0;
        if !a.is_one() {
            for (_, rc) in &mut rem {
                *rc *= &a;
            }
            scale *= BigRational::from_integer(a);
        }
        steps += 1;
        if steps.is_multiple_of(16) {
            budget.check_time()?;
            let g = content(rem.iter().chain(p.iter()).map(|(_, c)| c));
            if !g.is_zero() && !g.is_one() {
                for (_, c) in rem.iter_mut().chain(p.iter_mut()) {
                    *c /= &g;
                }
                scale /= BigRational::from_integer(g);
            }
        }
    }
    Ok((IntPoly { terms: rem }, scale))
}

fn s_poly(f: &IntPoly, g: &IntPoly, ord: &TermOrder) -> IntPoly {
    let l = f.lm().lcm(g.lm());
    let uf = l.div(f.lm()).unwrap();
    let ug = l.div(g.lm()).unwrap();
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    // a*uf*f - b*ug*g; leading terms cancel
    let fs: Vec<(Monomial, BigInt)> = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&uf), c * &a))
        .collect();
    IntPoly {
        terms: combine(&fs, &BigInt::one(), &g.terms[1..], &ug, &b, ord),
    }
}

/// Rational S-polynomial `(lcm/LT(f)) f - (lcm/LT(g)) g`.
pub(crate) fn s_polynomial_rational(f: &Polynomial, g: &Polynomial, ord: &TermOrder) -> Polynomial {
    let (mf, cf) = f.leading_term_under(ord).expect("nonzero");
    let (mg, cg) = g.leading_term_under(ord).expect("nonzero");
    let l = mf.lcm(mg);
    let left = f.mul_monomial(&l.div(mf).unwrap(), &cf.recip());
    let right = g.mul_monomial(&l.div(mg).unwrap(), &cg.recip());
    &left - &right
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    alive: bool,
}

struct State<'a> {
    ord: &'a TermOrder,
    polys: Vec<IntPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    queue: Vec<usize>,
}

impl State<'_> {
    /// Normal selection strategy: the live pair whose lcm is smallest in the
    /// working order, ties broken by creation order.
    fn next_pair(&mut self) -> Option<usize> {
        let pairs = &self.pairs;
        self.queue.retain(|&k| pairs[k].alive);
        let (pos, _) = self.queue.iter().enumerate().min_by(|a, b| {
            self.ord
                .cmp(&pairs[*a.1].lcm, &pairs[*b.1].lcm)
                .then(a.1.cmp(b.1))
        })?;
        Some(self.queue.swap_remove(pos))
    }

    fn reducers(&self) -> Vec<&IntPoly> {
        self.active.iter().map(|&k| &self.polys[k]).collect()
    }

    /// Gebauer–Möller installation of a new, fully reduced basis element.
    fn insert(&mut self, h: IntPoly) {
        let hi = self.polys.len();
        let hm = h.lm().clone();
        self.polys.push(h);

        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let gm = self.polys[g].lm();
                (g, gm.lcm(&hm), gm.is_coprime(&hm))
            })
            .collect();
        cands.reverse();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, l, coprime)) = cands.pop() {
            let dominated = cands.iter().any(|(_, l2, _)| l2.divides(&l))
                || kept.iter().any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }

        for p in self.pairs.iter_mut().filter(|p| p.alive) {
            if hm.divides(&p.lcm)
                && self.polys[p.i].lm().lcm(&hm) != p.lcm
                && self.polys[p.j].lm().lcm(&hm) != p.lcm
            {
                p.alive = false;
            }
        }

        for (g, l, coprime) in kept {
            if coprime {
                continue;
            }
            let k = self.pairs.len();
            self.queue.push(k);
            self.pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                alive: true,
            });
        }

        let polys = &self.polys;
        self.active.retain(|&g| !hm.divides(polys[g].lm()));
        self.active.push(hi);
    }
}

fn unit_basis(nvars: usize) -> Vec<IntPoly> {
    vec![IntPoly {
        terms: vec![(Monomial::one(nvars), BigInt::one())],
    }]
}

/// Reduced Gröbner basis: primitive, positive leading coefficients, sorted by
/// leading monomial, largest first.
pub(crate) fn groebner(
    gens: Vec<IntPoly>,
    nvars: usize,
    ord: &TermOrder,
    budget: &Budget,
) -> Result<Vec<IntPoly>, LimitExceeded> {
    let mut st = State {
        ord,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        queue: Vec::new(),
    };

    let mut gens: Vec<IntPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    // small leading monomials first keeps the early reductions cheap
    gens.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for f in gens {
        budget.check_time()?;
        let (mut r, _) = reduce(f, &st.reducers(), st.ord, budget)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(nvars));
        }
        r.make_primitive();
        budget.check_degree(r.degree())?;
        st.insert(r);
        budget.check_basis_size(st.polys.len())?;
    }

    while let Some(k) = st.next_pair() {
        budget.check_time()?;
        let (i, j) = (st.pairs[k].i, st.pairs[k].j);
        let s = s_poly(&st.polys[i], &st.polys[j], st.ord);
        let (mut r, _) = reduce(s, &st.reducers(), st.ord, budget)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(nvars));
        }
        r.make_primitive();
        budget.check_degree(r.degree())?;
        st.insert(r);
        budget.check_basis_size(st.polys.len())?;
    }

    let mut minimal: Vec<IntPoly> = st.active.iter().map(|&k| st.polys[k].clone()).collect();
    minimal.sort_by(|a, b| ord.cmp(b.lm(), a.lm()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&IntPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, p)| p)
            .collect();
        let (mut r, _) = reduce(minimal[k].clone(), &others, ord, budget)?;
        r.make_primitive();
        reduced.push(r);
    }
    Ok(reduced)
}
