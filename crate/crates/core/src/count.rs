//! Counting irreducible classes once finiteness is known.
//!
//! The trace generators span a finite-dimensional commutative algebra `D`
//! modulo `J`. Its points over the algebraic closure are the classes, and in
//! characteristic zero their number is the rank of the trace form of `D`.

use alloc::{vec, vec::Vec};

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::budget::{Budget, Clock, LimitExceeded};
use crate::decide::{analyze_with_budget, Analysis, DecideError, DecisionInput, Executor, Outcome, Sequential};
use crate::genmat::TraceGenerator;
use crate::groebner::GroebnerBasis;
use crate::linalg::{RationalMatrix, SparseEchelon, SparseVector};
use crate::poly::{Monomial, Polynomial, Variables};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("infinitely many classes (witness: {witness})")]
    Infinite { witness: TraceGenerator },
    #[error("resource limit reached: {0}")]
    Inconclusive(LimitExceeded),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

impl From<LimitExceeded> for CountError {
    fn from(e: LimitExceeded) -> Self {
        CountError::Inconclusive(e)
    }
}

/// A commutative algebra with a basis of normal forms modulo `J`.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    vars: Variables,
    basis: Vec<Polynomial>,
    /// `structure[i][j]` holds the coordinates of `basis[i] * basis[j]`.
    structure: Vec<Vec<Vec<BigRational>>>,
}

impl FiniteDimAlgebra {
    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis elements; the first is `1` unless the algebra is zero.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &[BigRational] {
        &self.structure[i][j]
    }

    /// Product of two elements given by coordinates.
    pub fn multiply(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let m = self.dim();
        let mut out = vec![BigRational::zero(); m];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let coef = ai * bj;
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o += &coef * c;
                }
            }
        }
        out
    }
}

fn to_vector(p: &Polynomial) -> SparseVector<Monomial> {
    p.terms().iter().cloned().collect()
}

/// The subalgebra of `B/J` generated by `gens`, by breadth-first closure
/// from `1`. Generators that are constant modulo `J` are skipped. Each round
/// multiplies the previous round's new elements by every generator; the
/// reductions of a round run through `executor` and are merged in order.
pub fn build_quotient_basis<E: Executor>(
    gens: &[TraceGenerator],
    j: &GroebnerBasis,
    budget: &Budget,
    executor: &E,
) -> Result<FiniteDimAlgebra, LimitExceeded> {
    let vars = j.vars().clone();
    if j.is_unit() {
        return Ok(FiniteDimAlgebra {
            vars,
            basis: Vec::new(),
            structure: Vec::new(),
        });
    }
    let mut reduced = Vec::new();
    for g in gens {
        let nf = j.try_normal_form(&g.value, budget)?;
        if !nf.is_constant() {
            reduced.push(nf);
        }
    }

    let mut echelon = SparseEchelon::new();
    let one = Polynomial::one(&vars);
    echelon.insert(&to_vector(&one)).expect("1 is nonzero modulo a proper ideal");
    let mut basis = vec![one];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        budget.check_time()?;
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&b| (0..reduced.len()).map(move |g| (b, g)))
            .collect();
        let products = executor.map(jobs.len(), |k| {
            let (b, g) = jobs[k];
            j.try_normal_form(&(&basis[b] * &reduced[g]), budget)
        });
        frontier.clear();
        for p in products {
            let p = p?;
            if echelon.insert(&to_vector(&p)).is_ok() {
                frontier.push(basis.len());
                basis.push(p);
                budget.check_basis_size(basis.len())?;
            }
        }
    }

    let m = basis.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let products = executor.map(pairs.len(), |k| {
        let (a, b) = pairs[k];
        j.try_normal_form(&(&basis[a] * &basis[b]), budget)
    });
    let mut structure = vec![vec![Vec::new(); m]; m];
    for ((a, b), p) in pairs.into_iter().zip(products) {
        let coords = echelon
            .coordinates(&to_vector(&p?))
            .expect("products of closure elements stay in the closure");
        structure[b][a] = coords.clone();
        structure[a][b] = coords;
    }
    Ok(FiniteDimAlgebra {
        vars,
        basis,
        structure,
    })
}

/// Left multiplication by `basis[index]`; column `k` holds the image of
/// `basis[k]`.
pub fn multiplication_matrix(d: &FiniteDimAlgebra, index: usize) -> RationalMatrix {
    let m = d.dim();
    let mut out = RationalMatrix::zero(m, m);
    for k in 0..m {
        for (row, c) in d.structure[index][k].iter().enumerate() {
            out.set(row, k, c.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFormReport {
    /// `gram[i][j] = trace(L_{basis[i] * basis[j]})`.
    pub gram: RationalMatrix,
    pub rank: usize,
    /// Number of points over the algebraic closure; equals `rank`.
    pub count: usize,
}

/// The trace form of `d`. Its radical is the nilradical, so the rank is
/// `dim D/N(D)`, the number of closure points.
pub fn trace_form_rank(d: &FiniteDimAlgebra) -> TraceFormReport {
    let m = d.dim();
    let traces: Vec<BigRational> = (0..m).map(|k| multiplication_matrix(d, k).trace()).collect();
    let mut gram = RationalMatrix::zero(m, m);
    for i in 0..m {
        for jj in 0..m {
            let v = d.structure[i][jj]
                .iter()
                .zip(&traces)
                .fold(BigRational::zero(), |acc, (c, t)| acc + c * t);
            gram.set(i, jj, v);
        }
    }
    let rank = gram.rank();
    TraceFormReport {
        gram,
        rank,
        count: rank,
    }
}

#[derive(Clone, Debug)]
pub struct CountResult {
    pub analysis: Analysis,
    pub algebra: FiniteDimAlgebra,
    pub report: TraceFormReport,
}

impl CountResult {
    pub fn count(&self) -> usize {
        self.report.count
    }
}

/// Counting stage on top of a finished analysis.
pub fn count_from_analysis<E: Executor>(
    analysis: Analysis,
    budget: &Budget,
    executor: &E,
) -> Result<CountResult, CountError> {
    match analysis.verdict.outcome {
        Outcome::Finite => {}
        Outcome::Infinite => {
            return Err(CountError::Infinite {
                witness: analysis.verdict.witness.clone().expect("infinite verdicts carry a witness"),
            })
        }
        Outcome::Inconclusive => {
            return Err(CountError::Inconclusive(
                analysis.verdict.limit.clone().expect("inconclusive verdicts carry the limit"),
            ))
        }
    }
    let j = analysis.j.as_ref().expect("finite verdicts carry J");
    let algebra = build_quotient_basis(&analysis.generators, j, budget, executor)?;
    let report = trace_form_rank(&algebra);
    Ok(CountResult {
        analysis,
        algebra,
        report,
    })
}

/// The full pipeline under one budget.
pub fn count_with<E: Executor>(
    input: &DecisionInput,
    clock: Option<&dyn Clock>,
    executor: &E,
) -> Result<CountResult, CountError> {
    let budget = Budget::new(input.options.limits, clock);
    let analysis = analyze_with_budget(input, &budget, executor)?;
    count_from_analysis(analysis, &budget, executor)
}

/// Number of equivalence classes of irreducible `n`-dimensional
/// representations, counted over the algebraic closure.
pub fn count_classes(input: &DecisionInput, clock: Option<&dyn Clock>) -> Result<usize, CountError> {
    Ok(count_with(input, clock, &Sequential)?.count())
}

#[cfg(test)]
mod tests;
