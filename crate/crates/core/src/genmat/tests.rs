use super::*;
use crate::poly::rat;
use crate::presentation::{free_multiply, FreeElement};
use alloc::string::{String, ToString};
use proptest::prelude::*;

fn x(l: usize) -> FreeElement {
    FreeElement::letter(l)
}

fn pres(s: usize, rels: Vec<FreeElement>) -> Presentation {
    let names = (0..s).map(|i| alloc::format!("G{i}"));
    Presentation::new(names, rels, None).unwrap()
}

fn int_matrix(vars: &Variables, rows: &[&[i64]]) -> PolyMatrix {
    let rows: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    PolyMatrix::from_rationals(vars, &rows)
}

/// Point of the entry ring given by integer matrices, one per generator.
fn point(sp: &GenericMatrixSpace, mats: &[Vec<Vec<i64>>]) -> Vec<BigRational> {
    sp.vars()
        .iter()
        .map(|v| match v {
            VariableId::Entry { generator, row, col } => {
                rat(mats[*generator as usize - 1][*row as usize - 1][*col as usize - 1])
            }
            _ => unreachable!(),
        })
        .collect()
}

#[test]
fn generic_space_shapes() {
    let sp = build_generic_space(1, 2).unwrap();
    assert_eq!(sp.vars().len(), 2);
    assert_eq!(sp.matrices()[1].get(0, 0).to_string(), "x[1,1,2]");

    let sp = build_generic_space(2, 1).unwrap();
    let m = &sp.matrices()[0];
    let shown: Vec<String> = m.entries().iter().map(|e| e.to_string()).collect();
    assert_eq!(shown, ["x[1,1,1]", "x[1,2,1]", "x[2,1,1]", "x[2,2,1]"]);

    let sp = build_generic_space(2, 0).unwrap();
    assert!(sp.matrices().is_empty() && sp.vars().is_empty());
    assert!(build_generic_space(0, 1).is_err());
}

#[test]
fn relation_ideals() {
    // X^2 - X at n = 1
    let sp = build_generic_space(1, 1).unwrap();
    let rel = free_multiply(&x(0), &x(0)).sub(&x(0));
    let ideal = relations_ideal(&pres(1, vec![rel]), &sp).unwrap();
    assert_eq!(ideal.generators().len(), 1);
    assert_eq!(ideal.generators()[0].to_string(), "x[1,1,1]^2 - x[1,1,1]");

    // Weyl at n = 1 collapses to the constant -1
    let sp = build_generic_space(1, 2).unwrap();
    let comm = free_multiply(&x(0), &x(1)).sub(&free_multiply(&x(1), &x(0)));
    let weyl = comm.sub(&FreeElement::one());
    let ideal = relations_ideal(&pres(2, vec![weyl]), &sp).unwrap();
    assert_eq!(ideal.generators().len(), 1);
    assert_eq!(ideal.generators()[0].constant_value(), Some(rat(-1)));

    // commutator at n = 2: four entries, the diagonal ones cancel in sum
    let sp = build_generic_space(2, 2).unwrap();
    let ideal = relations_ideal(&pres(2, vec![comm]), &sp).unwrap();
    assert_eq!(ideal.generators().len(), 4);
    let m = substitute(&free_multiply(&x(0), &x(1)).sub(&free_multiply(&x(1), &x(0))), sp.matrices(), sp.vars(), 2).unwrap();
    assert!((m.get(0, 0) + m.get(1, 1)).is_zero());

    assert!(matches!(
        relations_ideal(&pres(1, vec![]), &sp),
        Err(GenmatError::GeneratorCountMismatch { .. })
    ));
}

#[test]
fn standard_identity_small_cases() {
    let sp = build_generic_space(2, 4).unwrap();
    let m = sp.matrices();
    let s2 = standard_identity(&m[..2]);
    assert_eq!(s2, m[0].mul(&m[1]).sub(&m[1].mul(&m[0])));
    assert!(standard_identity(&[m[0].clone(), m[0].clone()]).is_zero());
    assert_eq!(standard_identity(&m[..1]), m[0]);
}

#[test]
fn amitsur_levitzky_at_two() {
    let sp = build_generic_space(2, 4).unwrap();
    assert!(standard_identity(sp.matrices()).is_zero());
    let s3 = standard_identity(&sp.matrices()[..3]);
    assert!(s3.entries().iter().any(|e| !e.is_zero()));
}

#[test]
fn standard_identity_matches_permutation_sum() {
    let sp = build_generic_space(2, 3).unwrap();
    let m = sp.matrices();
    let mut direct = PolyMatrix::zero(sp.vars(), 2);
    for (perm, sign) in signed_permutations(3) {
        let prod = perm.iter().fold(PolyMatrix::identity(sp.vars(), 2), |acc, &i| acc.mul(&m[i]));
        direct = if sign > 0 { direct.add(&prod) } else { direct.sub(&prod) };
    }
    assert_eq!(direct, standard_identity(m));
}

#[test]
fn length_bounds() {
    assert_eq!(length_bound(2), Ok(4));
    assert_eq!(length_bound(3), Ok(8));
    // 4 sqrt(32/3 + 1/4) ~ 13.22 and 5 sqrt(12.75) + 1/2 ~ 18.35
    assert_eq!(length_bound(4), Ok(13));
    assert_eq!(length_bound(5), Ok(18));
    assert!(length_bound(1).is_err());
    assert!(length_bound(0).is_err());
}

#[test]
fn necklace_counts() {
    let lengths = |s, m| {
        let mut counts = vec![0; m];
        for c in necklaces(s, m) {
            counts[c.len() - 1] += 1;
        }
        counts
    };
    assert_eq!(lengths(2, 4), [2, 3, 4, 6]);
    assert_eq!(lengths(1, 4), [1, 1, 1, 1]);
    assert_eq!(lengths(3, 3), [3, 6, 11]);
    assert!(necklaces(0, 4).is_empty());
}

#[test]
fn trace_generator_examples() {
    let sp = build_generic_space(1, 1).unwrap();
    let g = trace_generators(&sp);
    assert_eq!(g.len(), 1);
    assert_eq!(g[0].value.to_string(), "x[1,1,1]");
    assert_eq!(g[0].to_string(), "tr(x1)");

    let sp = build_generic_space(2, 2).unwrap();
    let g = trace_generators(&sp);
    assert_eq!(g.len(), 15);
    assert_eq!(g[3].to_string(), "tr(x1*x2)");
    assert_eq!(g[13].to_string(), "tr(x1*x2^3)");
    assert_eq!(g[14].to_string(), "tr(x2^4)");

    let sp = build_generic_space(2, 1).unwrap();
    let shown: Vec<String> = trace_generators(&sp).iter().map(|g| g.to_string()).collect();
    assert_eq!(shown, ["tr(x1)", "tr(x1^2)", "tr(x1^3)", "tr(x1^4)"]);
}

#[test]
fn traces_are_rotation_invariant() {
    let sp = build_generic_space(2, 2).unwrap();
    let gens = trace_generators(&sp);
    for w in words_up_to(2, 4).into_iter().skip(1) {
        let direct = sp.word_matrix(&w).trace();
        let neck = CyclicWord::new(&w).unwrap();
        let g = gens.iter().find(|g| g.word == neck).unwrap();
        assert_eq!(direct, g.value, "word {w:?}");
        assert_eq!(trace_of_word(&sp, &w), direct);
    }
    // longer words go through the split-and-memoize path
    for w in [vec![0, 1, 1, 0, 1, 0, 0], vec![1, 0, 0, 1, 1, 1, 0, 1, 0]] {
        assert_eq!(trace_of_word(&sp, &w), sp.word_matrix(&w).trace());
    }
    assert_eq!(trace_of_word(&sp, &[]).constant_value(), Some(rat(2)));
}

#[test]
fn irreducibility_set_one_generator_is_empty() {
    let sp = build_generic_space(2, 1).unwrap();
    let s = irreducibility_set(&sp, &SSetOptions::default(), &Budget::unlimited()).unwrap();
    assert!(s.is_empty());
    assert_eq!(s.length_bound, 4);
}

#[test]
fn irreducibility_set_for_dimension_one() {
    let sp = build_generic_space(1, 2).unwrap();
    let s = irreducibility_set(&sp, &SSetOptions::default(), &Budget::unlimited()).unwrap();
    assert_eq!(s.polynomials, vec![Polynomial::one(sp.vars())]);
}

#[test]
fn irreducibility_set_two_generators() {
    let sp = build_generic_space(2, 2).unwrap();
    let s = irreducibility_set(&sp, &SSetOptions::default(), &Budget::unlimited()).unwrap();
    assert!(!s.is_empty());
    assert_eq!(s.raw_tuples, 31u128.pow(3));
    assert!(s.polynomials.len() * 10 < 31usize.pow(3));
    for (f, tuple) in s.polynomials.iter().zip(&s.provenance) {
        assert!(!f.is_zero());
        assert!(f.total_degree() <= 3 * 4);
        // the stored polynomial is the trace formula up to sign
        let m: Vec<PolyMatrix> = tuple.iter().map(|w| sp.word_matrix(w)).collect();
        let direct = m[0].mul(&standard_identity(&m[1..])).trace();
        assert!(direct == *f || direct == -f, "tuple {tuple:?}");
    }
    // no duplicates up to sign
    for (i, f) in s.polynomials.iter().enumerate() {
        for g in &s.polynomials[i + 1..] {
            assert!(f != g && *f != -g);
        }
    }
    // tr(A(AB - BA)) vanishes by cyclicity
    let m = sp.matrices();
    assert!(m[0].mul(&standard_identity(&m[..2])).trace().is_zero());
    // the smallest members have degree 4 (tr([A,B]^2) type)
    assert_eq!(s.polynomials[0].total_degree(), 4);
}

#[test]
fn irreducibility_set_cuts_out_reducible_pairs() {
    let sp = build_generic_space(2, 2).unwrap();
    let opts = SSetOptions { length_bound_override: Some(2) };
    let s = irreducibility_set(&sp, &opts, &Budget::unlimited()).unwrap();
    // upper triangular pairs share an eigenvector: every member vanishes
    let reducible = point(&sp, &[vec![vec![3, -1], vec![0, 2]], vec![vec![1, 5], vec![0, -4]]]);
    assert!(s.polynomials.iter().all(|f| f.evaluate(&reducible).is_zero()));
    // the elementary pair generates M_2
    let irreducible = point(&sp, &[vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]]);
    assert!(s.polynomials.iter().any(|f| !f.evaluate(&irreducible).is_zero()));
}

#[test]
fn trace_is_conjugation_invariant_on_numbers() {
    let v = Variables::empty();
    let a = int_matrix(&v, &[&[0, 1], &[1, 0]]);
    let p = int_matrix(&v, &[&[2, 1], &[1, 1]]);
    let p_inv = int_matrix(&v, &[&[1, -1], &[-1, 2]]);
    assert_eq!(p.mul(&p_inv), PolyMatrix::identity(&v, 2));
    assert_eq!(p.mul(&a).mul(&p_inv).trace(), a.trace());
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..4, 2), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn standard_identity_is_alternating_and_multilinear(
        a in small_matrix(), b in small_matrix(), c in small_matrix(), d in small_matrix(), k in -3i64..4
    ) {
        let v = Variables::empty();
        let m = |rows: &Vec<Vec<i64>>| {
            let r: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            int_matrix(&v, &r)
        };
        let (a, b, c, d) = (m(&a), m(&b), m(&c), m(&d));
        let s = standard_identity(&[a.clone(), b.clone(), c.clone()]);
        // swapping two arguments flips the sign
        let swapped = standard_identity(&[b.clone(), a.clone(), c.clone()]);
        prop_assert_eq!(s.add(&swapped), PolyMatrix::zero(&v, 2));
        // linear in the first argument
        let combo = a.scale(&rat(k)).add(&d);
        let lhs = standard_identity(&[combo, b.clone(), c.clone()]);
        let rhs = s.scale(&rat(k)).add(&standard_identity(&[d, b, c]));
        prop_assert_eq!(lhs, rhs);
    }
}
