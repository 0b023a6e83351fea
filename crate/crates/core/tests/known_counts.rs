//! End-to-end counts for presentations whose irreducible representations are
//! classically known.

use irrepcount_core::count::{count_classes, CountError};
use irrepcount_core::decide::{decide_finiteness, DecisionInput, Outcome, QuotientMode};
use irrepcount_core::presentation::{free_multiply, FreeElement, Presentation};

fn x(l: usize) -> FreeElement {
    FreeElement::letter(l)
}

fn mul(a: &FreeElement, b: &FreeElement) -> FreeElement {
    free_multiply(a, b)
}

fn one() -> FreeElement {
    FreeElement::one()
}

fn pres(names: &[&str], rels: Vec<FreeElement>) -> Presentation {
    Presentation::new(names.iter().map(|s| s.to_string()), rels, None).unwrap()
}

fn commutator() -> FreeElement {
    mul(&x(0), &x(1)).sub(&mul(&x(1), &x(0)))
}

fn s3() -> Presentation {
    pres(
        &["a", "b"],
        vec![
            mul(&x(0), &x(0)).sub(&one()),
            mul(&x(1), &mul(&x(1), &x(1))).sub(&one()),
            mul(&mul(&x(0), &x(1)), &mul(&x(0), &x(1))).sub(&one()),
        ],
    )
}

fn count(p: Presentation, n: usize) -> usize {
    count_classes(&DecisionInput::new(p, n), None).unwrap()
}

#[test]
fn one_dimensional_counts() {
    let sq = mul(&x(0), &x(0));
    assert_eq!(count(pres(&["X"], vec![sq.sub(&x(0))]), 1), 2);
    assert_eq!(count(pres(&["X"], vec![sq.add(&one())]), 1), 2);
    assert_eq!(count(pres(&["X"], vec![sq]), 1), 1);
    assert_eq!(count(s3(), 1), 2);
}

#[test]
fn two_dimensional_counts() {
    assert_eq!(count(pres(&["X", "Y"], vec![commutator().sub(&one())]), 2), 0);
    assert_eq!(count(pres(&["X", "Y"], vec![commutator()]), 2), 0);
    assert_eq!(count(s3(), 2), 1);
}

#[test]
fn single_step_mode_agrees_on_symmetric_group() {
    let mut input = DecisionInput::new(s3(), 2);
    input.options.mode = QuotientMode::SingleStep;
    assert_eq!(count_classes(&input, None).unwrap(), 1);
}

#[test]
fn infinite_families_are_detected() {
    let free = decide_finiteness(&DecisionInput::new(pres(&["X", "Y"], vec![]), 1), None).unwrap();
    assert_eq!(free.outcome, Outcome::Infinite);
    assert_eq!(free.witness.unwrap().to_string(), "tr(x1)");

    let anti = mul(&x(0), &x(1)).add(&mul(&x(1), &x(0)));
    let qplane = DecisionInput::new(pres(&["X", "Y"], vec![anti]), 2);
    let v = decide_finiteness(&qplane, None).unwrap();
    assert_eq!(v.outcome, Outcome::Infinite);
    assert_eq!(v.witness.as_ref().unwrap().to_string(), "tr(x1^2)");
    assert!(matches!(count_classes(&qplane, None), Err(CountError::Infinite { .. })));
}
