//! Buchberger's algorithm and the ideal operations built on it: membership,
//! elimination, intersection, ideal quotient and saturation.

mod engine;

use alloc::{vec, vec::Vec};
use core::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::budget::{Budget, LimitExceeded};
use crate::poly::{MonomialOrder, Polynomial, TermOrder, VariableId, Variables};
use engine::IntPoly;

/// An ideal given by a finite list of nonzero generators. The zero ideal has
/// no generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Variables,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(vars: &Variables, generators: impl IntoIterator<Item = Polynomial>) -> Self {
        let generators: Vec<Polynomial> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .inspect(|g| assert_eq!(g.vars(), vars, "generator over a different variable set"))
            .collect();
        Ideal {
            vars: vars.clone(),
            generators,
        }
    }

    pub fn zero(vars: &Variables) -> Self {
        Ideal::new(vars, [])
    }

    pub fn unit(vars: &Variables) -> Self {
        Ideal::new(vars, [Polynomial::one(vars)])
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// This ideal plus extra generators.
    pub fn with(&self, more: impl IntoIterator<Item = Polynomial>) -> Ideal {
        Ideal::new(&self.vars, self.generators.iter().cloned().chain(more))
    }

    /// Re-express over another variable set; `None` if some generator uses a
    /// variable missing from `to`.
    pub fn embed(&self, to: &Variables) -> Option<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed(to))
            .collect::<Option<Vec<_>>>()?;
        Some(Ideal::new(to, gens))
    }
}

/// A reduced Gröbner basis: every element monic, no term of any element
/// divisible by another element's leading monomial. Elements are sorted by
/// leading monomial, largest first.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Variables,
    order: MonomialOrder,
    term_order: TermOrder,
    elements: Vec<Polynomial>,
    internal: Vec<IntPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.elements == other.elements
    }
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Basis of the unit ideal, `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn max_degree(&self) -> u32 {
        self.elements.iter().map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.vars, self.elements.iter().cloned())
    }

    /// Exact remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.try_normal_form(f, &Budget::unlimited()).expect("unlimited budget")
    }

    pub fn try_normal_form(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial, LimitExceeded> {
        assert_eq!(f.vars(), &self.vars, "polynomial over a different variable set");
        let (fi, k0) = IntPoly::from_polynomial(f, &self.term_order);
        let divisors: Vec<&IntPoly> = self.internal.iter().collect();
        let (r, k) = engine::reduce(fi, &divisors, &self.term_order, budget)?;
        Ok(r.to_polynomial(&self.vars, &(k * k0)))
    }

    /// Ideal membership: `f` reduces to zero.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn try_contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool, LimitExceeded> {
        Ok(self.try_normal_form(f, budget)?.is_zero())
    }

    /// Rendering used by `--dump gb`: a header naming the order and the
    /// variable ranking, then one polynomial per line.
    pub fn dump(&self) -> impl fmt::Display + '_ {
        Dump(self)
    }
}

struct Dump<'a>(&'a GroebnerBasis);

impl fmt::Display for Dump<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gb = self.0;
        writeln!(f, "# order: {}", gb.order.name())?;
        if let MonomialOrder::Block { eliminate, .. } = &gb.order {
            let names: Vec<alloc::string::String> =
                eliminate.iter().map(|v| alloc::format!("{v}")).collect();
            writeln!(f, "# eliminated: {}", names.join(" "))?;
        }
        writeln!(f, "# ranking: {}", gb.vars.ranking())?;
        for e in &gb.elements {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// The S-polynomial `(lcm/LT(f))·f − (lcm/LT(g))·g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    engine::s_polynomial_rational(f, g, &ord.compile(f.vars()))
}

/// The reduced Gröbner basis of `ideal` under `ord`.
pub fn buchberger(ideal: &Ideal, ord: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis, LimitExceeded> {
    let vars = ideal.vars().clone();
    let term_order = ord.compile(&vars);
    let gens: Vec<IntPoly> = ideal
        .generators()
        .iter()
        .map(|g| IntPoly::from_polynomial(g, &term_order).0)
        .collect();
    let internal = engine::groebner(gens, vars.len(), &term_order, budget)?;
    let elements = internal.iter().map(|p| p.to_monic(&vars)).collect();
    Ok(GroebnerBasis {
        vars,
        order: ord.clone(),
        term_order,
        elements,
        internal,
    })
}

/// Generators of `ideal ∩ k[retained variables]`, still expressed over the
/// ideal's variable set.
pub fn eliminate(ideal: &Ideal, drop: &[VariableId], budget: &Budget) -> Result<Ideal, LimitExceeded> {
    let vars = ideal.vars();
    let ord = MonomialOrder::elimination(drop.iter().cloned());
    let gb = buchberger(ideal, &ord, budget)?;
    let dropped: Vec<usize> = drop.iter().filter_map(|v| vars.index_of(v)).collect();
    Ok(Ideal::new(
        vars,
        gb.elements
            .into_iter()
            .filter(|e| dropped.iter().all(|&i| !e.involves(i))),
    ))
}

/// `I ∩ K` by eliminating `w` from `w·I + (1 − w)·K`.
pub fn intersect(i: &Ideal, k: &Ideal, budget: &Budget) -> Result<Ideal, LimitExceeded> {
    assert_eq!(i.vars(), k.vars(), "ideals over different variable sets");
    let vars = i.vars();
    if i.is_zero() || k.is_zero() {
        return Ok(Ideal::zero(vars));
    }
    let w = vars.fresh_auxiliary("w");
    let ext = vars.with([w.clone()]);
    let wp = Polynomial::variable(&ext, &w).unwrap();
    let one_minus_w = &Polynomial::one(&ext) - &wp;
    let gens = i
        .generators()
        .iter()
        .map(|g| &g.embed(&ext).unwrap() * &wp)
        .chain(
            k.generators()
                .iter()
                .map(|g| &g.embed(&ext).unwrap() * &one_minus_w),
        );
    let elim = eliminate(&Ideal::new(&ext, gens), &[w], budget)?;
    Ok(elim.embed(vars).expect("w was eliminated"))
}

/// `(I : f) = { g : g·f ∈ I }`.
pub fn ideal_quotient(i: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal, LimitExceeded> {
    assert!(!f.is_zero(), "quotient by the zero polynomial");
    if let Some(c) = f.constant_value() {
        debug_assert!(c != BigRational::from_integer(0.into()));
        return Ok(i.clone());
    }
    let cap = intersect(i, &Ideal::new(i.vars(), [f.clone()]), budget)?;
    let gens = cap
        .generators()
        .iter()
        .map(|g| g.div_exact(f).expect("generators of I ∩ <f> are multiples of f"))
        .collect::<Vec<_>>();
    Ok(Ideal::new(i.vars(), gens))
}

/// `(I : ⟨S⟩)`, the intersection of the quotients by each member of `S`.
pub fn ideal_quotient_by_ideal(i: &Ideal, s: &[Polynomial], budget: &Budget) -> Result<Ideal, LimitExceeded> {
    let mut acc: Option<Ideal> = None;
    for g in s {
        let q = ideal_quotient(i, g, budget)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q, budget)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(i.vars())))
}

/// `(I : ⟨S⟩^∞)` by iterating `K ← (K : ⟨S⟩)` from `K = I` until the reduced
/// basis stops changing.
pub fn saturate(i: &Ideal, s: &[Polynomial], budget: &Budget) -> Result<Ideal, LimitExceeded> {
    assert!(!s.is_empty(), "saturation by an empty set");
    let ord = MonomialOrder::GrevLex;
    let mut current = buchberger(i, &ord, budget)?;
    loop {
        let next_ideal = ideal_quotient_by_ideal(&current.to_ideal(), s, budget)?;
        let next = buchberger(&next_ideal, &ord, budget)?;
        if next == current {
            return Ok(current.to_ideal());
        }
        current = next;
    }
}

/// `(I : g^∞)` in one elimination: drop `t` from `I + ⟨1 − t·g⟩`.
pub fn saturate_by_element(i: &Ideal, g: &Polynomial, budget: &Budget) -> Result<Ideal, LimitExceeded> {
    assert!(!g.is_zero(), "saturation by the zero polynomial");
    if g.is_constant() {
        return Ok(i.clone());
    }
    let vars = i.vars();
    let t = vars.fresh_auxiliary("t");
    let ext = vars.with([t.clone()]);
    let tp = Polynomial::variable(&ext, &t).unwrap();
    let rabinowitsch = &Polynomial::one(&ext) - &(&tp * &g.embed(&ext).unwrap());
    let lifted = i.embed(&ext).unwrap().with([rabinowitsch]);
    let elim = eliminate(&lifted, &[t], budget)?;
    Ok(elim.embed(vars).expect("t was eliminated"))
}

/// Whether `g` vanishes on the whole variety of `basis`, i.e. lies in the
/// radical of its ideal.
pub fn in_radical(basis: &GroebnerBasis, g: &Polynomial, budget: &Budget) -> Result<bool, LimitExceeded> {
    if basis.is_unit() || basis.try_contains(g, budget)? {
        return Ok(true);
    }
    if g.is_constant() {
        return Ok(false);
    }
    let vars = basis.vars();
    let t = vars.fresh_auxiliary("t");
    let ext = vars.with([t.clone()]);
    let tp = Polynomial::variable(&ext, &t).unwrap();
    let rabinowitsch = &Polynomial::one(&ext) - &(&tp * &g.embed(&ext).unwrap());
    let lifted = basis.to_ideal().embed(&ext).unwrap().with([rabinowitsch]);
    Ok(buchberger(&lifted, &MonomialOrder::GrevLex, budget)?.is_unit())
}

/// Equality of ideals via their reduced graded-reverse-lex bases.
pub fn same_ideal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool, LimitExceeded> {
    let ord = MonomialOrder::GrevLex;
    Ok(buchberger(a, &ord, budget)? == buchberger(b, &ord, budget)?)
}

/// Basis of the unit ideal without running Buchberger.
pub fn unit_basis(vars: &Variables, ord: &MonomialOrder) -> GroebnerBasis {
    let one = Polynomial::one(vars);
    let term_order = ord.compile(vars);
    let internal = vec![IntPoly::from_polynomial(&one, &term_order).0];
    GroebnerBasis {
        vars: vars.clone(),
        order: ord.clone(),
        term_order,
        elements: vec![one],
        internal,
    }
}

impl GroebnerBasis {
    /// The basis of the same ideal under a different order.
    pub fn reorder(&self, ord: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis, LimitExceeded> {
        if *ord == self.order {
            return Ok(self.clone());
        }
        buchberger(&self.to_ideal(), ord, budget)
    }

    /// Leading coefficient of every element is one.
    pub fn is_monic(&self) -> bool {
        self.elements
            .iter()
            .all(|e| e.leading_term_under(&self.term_order).is_some_and(|(_, c)| c.is_one()))
    }

    pub fn term_order(&self) -> &TermOrder {
        &self.term_order
    }
}
