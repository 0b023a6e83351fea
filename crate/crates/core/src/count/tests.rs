use super::*;
use crate::decide::{analyze, DecisionInput};
use crate::poly::rat;
use crate::presentation::{free_multiply, FreeElement, Presentation};

fn x(l: usize) -> FreeElement {
    FreeElement::letter(l)
}

fn mul(a: &FreeElement, b: &FreeElement) -> FreeElement {
    free_multiply(a, b)
}

fn one() -> FreeElement {
    FreeElement::one()
}

fn pres(s: usize, rels: Vec<FreeElement>) -> Presentation {
    Presentation::new((0..s).map(|i| alloc::format!("G{i}")), rels, None).unwrap()
}

fn single(rel: FreeElement) -> Presentation {
    pres(1, vec![rel])
}

fn square() -> FreeElement {
    mul(&x(0), &x(0))
}

fn run(p: Presentation, n: usize) -> Result<CountResult, CountError> {
    count_with(&DecisionInput::new(p, n), None, &Sequential)
}

fn gram(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_integers(rows)
}

#[test]
fn idempotent_algebra() {
    let r = run(single(square().sub(&x(0))), 1).unwrap();
    assert_eq!(r.algebra.dim(), 2);
    assert!(r.algebra.basis()[0].constant_value().is_some());
    let l = multiplication_matrix(&r.algebra, 1);
    assert_eq!(l, gram(&[&[0, 0], &[1, 1]]));
    assert_eq!(multiplication_matrix(&r.algebra, 0), RationalMatrix::identity(2));
    assert_eq!(r.report.gram, gram(&[&[2, 1], &[1, 1]]));
    assert_eq!(r.count(), 2);
}

#[test]
fn conjugate_pair_counts_twice() {
    let r = run(single(square().add(&one())), 1).unwrap();
    assert_eq!(multiplication_matrix(&r.algebra, 1), gram(&[&[0, -1], &[1, 0]]));
    assert_eq!(r.report.gram, gram(&[&[2, 0], &[0, -2]]));
    assert_eq!(r.count(), 2);
}

#[test]
fn double_point_counts_once() {
    let r = run(single(square()), 1).unwrap();
    assert_eq!(r.report.gram, gram(&[&[2, 0], &[0, 0]]));
    assert_eq!(r.report.rank, 1);
    assert_eq!(r.count(), 1);
}

#[test]
fn no_representations_count_zero() {
    let weyl = pres(2, vec![mul(&x(0), &x(1)).sub(&mul(&x(1), &x(0))).sub(&one())]);
    for n in [1, 2] {
        let r = run(weyl.clone(), n).unwrap();
        assert_eq!(r.algebra.dim(), 0);
        assert_eq!(r.count(), 0);
    }
}

#[test]
fn infinite_verdict_is_an_error() {
    let free = pres(2, vec![]);
    match run(free, 1) {
        Err(CountError::Infinite { witness }) => assert_eq!(alloc::format!("{witness}"), "tr(x1)"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn limits_are_reported() {
    let mut input = DecisionInput::new(single(mul(&square(), &square()).sub(&x(0))), 1);
    input.options.limits.max_basis_size = 2;
    assert!(matches!(count_classes(&input, None), Err(CountError::Inconclusive(_))));
}

#[test]
fn symmetric_group_in_dimension_one() {
    let s3 = pres(
        2,
        vec![
            square().sub(&one()),
            mul(&x(1), &mul(&x(1), &x(1))).sub(&one()),
            mul(&mul(&x(0), &x(1)), &mul(&x(0), &x(1))).sub(&one()),
        ],
    );
    assert_eq!(count_classes(&DecisionInput::new(s3, 1), None).unwrap(), 2);
}

/// Checks closure, commutativity, symmetry and nilpotency of the Gram kernel.
fn check_structure(d: &FiniteDimAlgebra, report: &TraceFormReport) {
    let m = d.dim();
    let mats: Vec<RationalMatrix> = (0..m).map(|i| multiplication_matrix(d, i)).collect();
    for a in &mats {
        for b in &mats {
            assert_eq!(a.mul(b), b.mul(a));
        }
    }
    assert!(report.gram.is_symmetric());
    assert!(report.rank <= m);
    for v in report.gram.kernel() {
        let mut power = v.clone();
        for _ in 1..m.max(1) {
            power = d.multiply(&power, &v);
        }
        assert!(power.iter().all(Zero::is_zero), "kernel element is not nilpotent");
    }
}

#[test]
fn structural_invariants() {
    let cases = [
        single(square().sub(&x(0))),
        single(mul(&square(), &x(0)).sub(&square())),
        single(mul(&square(), &square()).sub(&mul(&square(), &x(0)))),
        pres(2, vec![square().sub(&x(1)), mul(&x(1), &x(1)).sub(&x(0)), mul(&x(0), &x(1)).sub(&mul(&x(1), &x(0)))]),
    ];
    for p in cases {
        let r = run(p, 1).unwrap();
        check_structure(&r.algebra, &r.report);
    }
}

#[test]
fn generator_order_does_not_matter() {
    // x^3 = x^2 and y^2 = x*y: permuting generators permutes nothing essential
    let p = pres(2, vec![mul(&square(), &x(0)).sub(&square()), mul(&x(1), &x(1)).sub(&mul(&x(0), &x(1)))]);
    let a = analyze(&DecisionInput::new(p, 1), None, &Sequential).unwrap();
    let budget = Budget::unlimited();
    let j = a.j.clone().unwrap();
    let forward = build_quotient_basis(&a.generators, &j, &budget, &Sequential).unwrap();
    let mut reversed_gens = a.generators.clone();
    reversed_gens.reverse();
    let backward = build_quotient_basis(&reversed_gens, &j, &budget, &Sequential).unwrap();
    assert_eq!(forward.dim(), backward.dim());
    assert_eq!(trace_form_rank(&forward).count, trace_form_rank(&backward).count);
    // x in {0, 1} (x = 0 doubled), y in {0, x}: points (0,0), (1,0), (1,1)
    assert_eq!(trace_form_rank(&forward).count, 3);
    let _ = rat(0);
}
