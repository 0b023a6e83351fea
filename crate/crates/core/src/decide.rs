//! Deciding whether a presented algebra has finitely many classes of
//! irreducible `n`-dimensional representations.
//!
//! The representation variety is cut out by the relation ideal `I` in the
//! ring of generic matrix entries. Saturating `I` by the irreducibility set
//! gives `J`, whose variety is the closure of the irreducible locus. There
//! are finitely many classes exactly when every trace generator is algebraic
//! modulo `J`.

use alloc::{vec, vec::Vec};
use core::sync::atomic::{AtomicUsize, Ordering};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::{Budget, Clock, LimitExceeded, Limits};
use crate::genmat::{
    build_generic_space, irreducibility_set, relations_ideal, trace_generators, GenericMatrixSpace,
    GenmatError, IrreducibilitySet, SSetOptions, TraceGenerator,
};
use crate::groebner::{
    buchberger, ideal_quotient, in_radical, intersect, saturate_by_element, unit_basis, GroebnerBasis, Ideal,
};
use crate::linalg::{SparseEchelon, SparseVector};
use crate::poly::{Monomial, MonomialOrder, Polynomial, UnivariatePolynomial, VariableId};
use crate::presentation::Presentation;

/// How `J` is formed from the relation ideal and the irreducibility set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QuotientMode {
    /// `I : <S>^∞`.
    #[default]
    Saturate,
    /// `I : <S>`, a single quotient step.
    SingleStep,
}

impl QuotientMode {
    pub fn name(&self) -> &'static str {
        match self {
            QuotientMode::Saturate => "saturate",
            QuotientMode::SingleStep => "single",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecisionOptions {
    pub mode: QuotientMode,
    pub limits: Limits,
    /// Order for every basis that is not an elimination.
    pub order: MonomialOrder,
    pub sset: SSetOptions,
}

impl Default for DecisionOptions {
    fn default() -> Self {
        DecisionOptions {
            mode: QuotientMode::Saturate,
            limits: Limits::default(),
            order: MonomialOrder::GrevLex,
            sset: SSetOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecisionInput {
    pub presentation: Presentation,
    pub n: usize,
    pub options: DecisionOptions,
}

impl DecisionInput {
    pub fn new(presentation: Presentation, n: usize) -> Self {
        DecisionInput {
            presentation,
            n,
            options: DecisionOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Finite,
    Infinite,
    Inconclusive,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Finite => "FINITE",
            Outcome::Infinite => "INFINITE",
            Outcome::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomialRecord {
    pub generator: TraceGenerator,
    pub polynomial: UnivariatePolynomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub space_ms: u64,
    pub sset_ms: u64,
    pub relations_ms: u64,
    pub j_ms: u64,
    pub algebraic_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecisionMetrics {
    pub variables: usize,
    pub relation_generators: usize,
    pub relation_basis_size: usize,
    pub relation_basis_max_degree: u32,
    pub sset_raw_tuples: u128,
    pub sset_evaluated_tuples: u64,
    pub sset_size: usize,
    /// Members of the irreducibility set actually used to form `J`.
    pub sset_used: usize,
    pub trace_generators: usize,
    pub j_basis_size: usize,
    pub j_basis_max_degree: u32,
    pub timings: StageTimings,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    /// For an infinite verdict, the first transcendental trace generator.
    pub witness: Option<TraceGenerator>,
    /// Minimal polynomials modulo `J` of the generators tested so far; all of
    /// them for a finite verdict.
    pub minimal_polynomials: Vec<MinimalPolynomialRecord>,
    /// For an inconclusive verdict, the limit that was hit.
    pub limit: Option<LimitExceeded>,
    pub metrics: DecisionMetrics,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error(transparent)]
    Genmat(#[from] GenmatError),
}

/// Runs independent jobs. Results come back in job order whatever the
/// execution order, which keeps verdicts reproducible.
pub trait Executor {
    fn map<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

/// Runs jobs one after another on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..jobs).map(f).collect()
    }
}

/// Everything computed on the way to a verdict; the counting stage and the
/// diagnostic dumps reuse it.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub space: GenericMatrixSpace,
    pub relations: Ideal,
    pub relations_basis: Option<GroebnerBasis>,
    pub sset: Option<IrreducibilitySet>,
    pub j: Option<GroebnerBasis>,
    pub generators: Vec<TraceGenerator>,
    pub verdict: Verdict,
}

/// `I : <S>^∞` (or `I : <S>` in single-step mode) as a reduced basis under
/// `order`.
///
/// Saturation only depends on the radical of `<S> + I`, and the one-step
/// quotient only on `<S> + I` itself, so members already implied by the ones
/// chosen so far are skipped: first by plain membership in the ideal of the
/// chosen members, then in `I` plus the chosen members, and (saturation only)
/// by radical membership. The result is the intersection of the quotients by
/// the chosen members.
pub fn compute_j(
    relations: &Ideal,
    sset: &[Polynomial],
    mode: QuotientMode,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<(GroebnerBasis, usize), LimitExceeded> {
    let vars = relations.vars();
    let base = buchberger(relations, order, budget)?;
    if base.is_unit() || sset.is_empty() {
        return Ok((unit_basis(vars, order), 0));
    }
    if let Some(c) = sset.iter().find(|g| g.is_constant()) {
        debug_assert!(!c.is_zero());
        return Ok((base, 1));
    }

    let mut chosen: Vec<Polynomial> = Vec::new();
    let mut chosen_basis: Option<GroebnerBasis> = None;
    let mut probe = base.clone();
    for g in sset {
        budget.check_time()?;
        if probe.is_unit() {
            break;
        }
        if let Some(cb) = &chosen_basis {
            if cb.try_contains(g, budget)? {
                continue;
            }
        }
        if probe.try_contains(g, budget)? {
            continue;
        }
        if mode == QuotientMode::Saturate && in_radical(&probe, g, budget)? {
            probe = buchberger(&probe.to_ideal().with([g.clone()]), order, budget)?;
            continue;
        }
        chosen.push(g.clone());
        chosen_basis = Some(buchberger(&Ideal::new(vars, chosen.iter().cloned()), order, budget)?);
        probe = buchberger(&probe.to_ideal().with([g.clone()]), order, budget)?;
    }
    if chosen.is_empty() {
        // every member lies in the radical of I: nothing is irreducible
        return Ok((unit_basis(vars, order), 0));
    }

    let mut acc: Option<Ideal> = None;
    for g in &chosen {
        let q = match mode {
            QuotientMode::Saturate => saturate_by_element(relations, g, budget)?,
            QuotientMode::SingleStep => ideal_quotient(relations, g, budget)?,
        };
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q, budget)?,
        });
    }
    let j = buchberger(&acc.unwrap(), order, budget)?;
    Ok((j, chosen.len()))
}

/// Small powers tried by linear algebra on normal forms before falling back
/// to elimination.
const POWER_PROBE: usize = 6;

/// The monic generator of `J ∩ k[f]` in a fresh variable `y`, or `None` when
/// `f` is transcendental modulo `J`. Modulo the unit ideal the answer is `y`.
pub fn minimal_polynomial(
    f: &Polynomial,
    j: &GroebnerBasis,
    budget: &Budget,
) -> Result<Option<UnivariatePolynomial>, LimitExceeded> {
    if j.is_unit() {
        return Ok(Some(UnivariatePolynomial::identity()));
    }
    if let Some(found) = minimal_polynomial_by_powers(f, j, POWER_PROBE, budget)? {
        return Ok(Some(found));
    }
    minimal_polynomial_by_elimination(f, j, budget)
}

/// Looks for the first linear dependency among the normal forms of
/// `1, f, f^2, .., f^max_degree`. A dependency in degree `d` with none
/// before it is exactly the minimal polynomial.
pub fn minimal_polynomial_by_powers(
    f: &Polynomial,
    j: &GroebnerBasis,
    max_degree: usize,
    budget: &Budget,
) -> Result<Option<UnivariatePolynomial>, LimitExceeded> {
    let to_vec = |p: &Polynomial| -> SparseVector<Monomial> { p.terms().iter().cloned().collect() };
    let f_nf = j.try_normal_form(f, budget)?;
    let mut echelon = SparseEchelon::new();
    let mut power = j.try_normal_form(&Polynomial::one(j.vars()), budget)?;
    for d in 0..=max_degree {
        budget.check_time()?;
        if let Err(coords) = echelon.insert(&to_vec(&power)) {
            let mut coeffs: Vec<BigRational> = coords.into_iter().map(|c| -c).collect();
            coeffs.push(BigRational::one());
            debug_assert_eq!(coeffs.len(), d + 1);
            return Ok(Some(UnivariatePolynomial::new(coeffs)));
        }
        if d < max_degree {
            power = j.try_normal_form(&(&power * &f_nf), budget)?;
        }
    }
    Ok(None)
}

/// Eliminates every original variable from `J + <y - f>` under a block order.
pub fn minimal_polynomial_by_elimination(
    f: &Polynomial,
    j: &GroebnerBasis,
    budget: &Budget,
) -> Result<Option<UnivariatePolynomial>, LimitExceeded> {
    let vars = j.vars();
    let y = vars.fresh_auxiliary("y");
    let ext = vars.with([y.clone()]);
    let yp = Polynomial::variable(&ext, &y).unwrap();
    let lifted = j
        .to_ideal()
        .embed(&ext)
        .unwrap()
        .with([&yp - &f.embed(&ext).unwrap()]);
    let drop: Vec<VariableId> = vars.iter().cloned().collect();
    let ord = MonomialOrder::elimination(drop);
    let gb = buchberger(&lifted, &ord, budget)?;
    let yi = ext.index_of(&y).unwrap();
    let in_y = gb
        .elements()
        .iter()
        .find(|e| e.terms().iter().all(|(m, _)| (0..ext.len()).all(|i| i == yi || !m.involves(i))));
    Ok(in_y.map(|e| {
        let deg = e.total_degree() as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in e.terms() {
            coeffs[m.exponent(yi) as usize] = c.clone();
        }
        UnivariatePolynomial::new(coeffs).monic()
    }))
}

pub fn is_algebraic(f: &Polynomial, j: &GroebnerBasis, budget: &Budget) -> Result<bool, LimitExceeded> {
    Ok(minimal_polynomial(f, j, budget)?.is_some())
}

/// `p(f)` reduced modulo `J`; zero certifies that `p` annihilates `f`.
pub fn evaluate_at(p: &UnivariatePolynomial, f: &Polynomial) -> Polynomial {
    p.coefficients()
        .iter()
        .rev()
        .fold(Polynomial::zero(f.vars()), |acc, c| {
            &(&acc * f) + &Polynomial::constant(f.vars(), c.clone())
        })
}

pub fn decide_finiteness(input: &DecisionInput, clock: Option<&dyn Clock>) -> Result<Verdict, DecideError> {
    Ok(analyze(input, clock, &Sequential)?.verdict)
}

/// Runs the whole decision pipeline under the input's limits.
pub fn analyze<E: Executor>(
    input: &DecisionInput,
    clock: Option<&dyn Clock>,
    executor: &E,
) -> Result<Analysis, DecideError> {
    analyze_with_budget(input, &Budget::new(input.options.limits, clock), executor)
}

/// Like [`analyze`], charging an existing budget so that later stages share
/// one wall-clock allowance.
pub fn analyze_with_budget<E: Executor>(
    input: &DecisionInput,
    budget: &Budget,
    executor: &E,
) -> Result<Analysis, DecideError> {
    let budget = *budget;
    let order = &input.options.order;
    let mut metrics = DecisionMetrics::default();
    let mut mark = budget.elapsed_millis();
    let mut lap = |budget: &Budget| {
        let now = budget.elapsed_millis();
        let d = now - mark;
        mark = now;
        d
    };

    let space = build_generic_space(input.n, input.presentation.generator_count())?;
    let relations = relations_ideal(&input.presentation, &space)?;
    let generators = trace_generators(&space);
    metrics.variables = space.vars().len();
    metrics.relation_generators = relations.generators().len();
    metrics.trace_generators = generators.len();
    metrics.timings.space_ms = lap(&budget);

    let mut analysis = Analysis {
        space,
        relations,
        relations_basis: None,
        sset: None,
        j: None,
        generators,
        verdict: Verdict {
            outcome: Outcome::Inconclusive,
            witness: None,
            minimal_polynomials: Vec::new(),
            limit: None,
            metrics: DecisionMetrics::default(),
        },
    };
    let result = run_stages(&mut analysis, input, order, &budget, &mut metrics, &mut lap, executor);
    match result {
        Ok(()) => {}
        Err(limit) => {
            analysis.verdict.outcome = Outcome::Inconclusive;
            analysis.verdict.witness = None;
            analysis.verdict.limit = Some(limit);
        }
    }
    analysis.verdict.metrics = metrics;
    Ok(analysis)
}

fn run_stages<E: Executor>(
    analysis: &mut Analysis,
    input: &DecisionInput,
    order: &MonomialOrder,
    budget: &Budget,
    metrics: &mut DecisionMetrics,
    lap: &mut impl FnMut(&Budget) -> u64,
    executor: &E,
) -> Result<(), LimitExceeded> {
    let rel_basis = buchberger(&analysis.relations, order, budget)?;
    metrics.relation_basis_size = rel_basis.len();
    metrics.relation_basis_max_degree = rel_basis.max_degree();
    let unit = rel_basis.is_unit();
    analysis.relations_basis = Some(rel_basis);
    metrics.timings.relations_ms = lap(budget);

    let (j, used) = if unit {
        (unit_basis(analysis.space.vars(), order), 0)
    } else {
        let sset = irreducibility_set(&analysis.space, &input.options.sset, budget)?;
        metrics.sset_raw_tuples = sset.raw_tuples;
        metrics.sset_evaluated_tuples = sset.evaluated_tuples;
        metrics.sset_size = sset.len();
        let polys = sset.polynomials.clone();
        analysis.sset = Some(sset);
        metrics.timings.sset_ms = lap(budget);
        compute_j(&analysis.relations, &polys, input.options.mode, order, budget)?
    };
    metrics.sset_used = used;
    metrics.j_basis_size = j.len();
    metrics.j_basis_max_degree = j.max_degree();
    metrics.timings.j_ms = lap(budget);

    let gens = &analysis.generators;
    // a transcendental generator at index i makes every later one irrelevant
    let first_infinite = AtomicUsize::new(usize::MAX);
    let results = executor.map(gens.len(), |i| {
        if i > first_infinite.load(Ordering::Relaxed) {
            return None;
        }
        let r = minimal_polynomial(&gens[i].value, &j, budget);
        if let Ok(None) = r {
            first_infinite.fetch_min(i, Ordering::Relaxed);
        }
        Some(r)
    });
    analysis.j = Some(j);
    let verdict = &mut analysis.verdict;
    verdict.outcome = Outcome::Finite;
    for (g, r) in gens.iter().zip(results) {
        match r.expect("jobs before the witness always run")? {
            Some(p) => verdict.minimal_polynomials.push(MinimalPolynomialRecord {
                generator: g.clone(),
                polynomial: p,
            }),
            None => {
                verdict.outcome = Outcome::Infinite;
                verdict.witness = Some(g.clone());
                break;
            }
        }
    }
    metrics.timings.algebraic_ms = lap(budget);
    Ok(())
}
