mod common;

use common::*;
use phasespace_symbolic::*;
use proptest::prelude::*;

fn g(terms: &[([u32; 4], Cq)]) -> Generator {
    Generator::from_terms(terms.iter().cloned())
}

fn pair(terms: &[([u32; 4], Cq)]) -> PairOp {
    PairOp::from_terms(terms.iter().cloned())
}

fn i(n: i64, d: i64) -> Cq {
    c((0, 1), (n, d))
}

fn r(n: i64, d: i64) -> Cq {
    c((n, d), (0, 1))
}

#[test]
fn lifts_of_small_observables() {
    assert_eq!(xi_lift(&sym("q")).unwrap(), g(&[([0, 0, 0, 1], i(1, 1))]));
    assert_eq!(xi_lift(&sym("q^3")).unwrap(), g(&[([2, 0, 0, 1], i(3, 1)), ([0, 0, 0, 3], i(-1, 4))]));
    assert!(xi_lift(&sym("1")).unwrap().is_zero());
    assert!(matches!(xi_lift(&sym("i*q")), Err(LiftError::NotReal(_))));
    assert_eq!(xi_lift(&sym("q^3")).unwrap().to_string(), "-(1/4)i*dp^3 + 3i*q^2*dp");
}

#[test]
fn composition_examples() {
    let dp = g(&[([0, 0, 0, 1], i(1, 1))]);
    let dq = g(&[([0, 0, 1, 0], i(-1, 1))]);
    assert!(dp.commutator(&dq).is_zero());
    let a = g(&[([1, 0, 0, 1], r(1, 1))]);
    let b = g(&[([0, 1, 1, 0], r(1, 1))]);
    assert_eq!(a.commutator(&b), g(&[([1, 0, 1, 0], r(1, 1)), ([0, 1, 0, 1], r(-1, 1))]));
    // brute-force check of composition on monomials
    for f in [sym("q^3*p^2"), sym("q*p^4 + p"), sym("q^5")] {
        assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
        assert_eq!(a.commutator(&b).apply(&f), &a.apply(&b.apply(&f)) - &b.apply(&a.apply(&f)));
    }
}

#[test]
fn z_conjugation_examples() {
    let dp = g(&[([0, 0, 0, 1], i(1, 1))]);
    assert_eq!(z_conjugate(&dp), pair(&[([1, 0, 0, 0], r(1, 1)), ([0, 1, 0, 0], r(-1, 1))]));
    let dq = g(&[([0, 0, 1, 0], i(-1, 1))]);
    assert_eq!(z_conjugate(&dq), pair(&[([0, 0, 1, 0], i(-1, 1)), ([0, 0, 0, 1], i(-1, 1))]));
    // i(p dp - q dq) is the lift of qp; its x part is -i(x dx + 1/2)
    let dil = g(&[([0, 1, 0, 1], i(1, 1)), ([1, 0, 1, 0], i(-1, 1))]);
    let a = split_test(&z_conjugate(&dil)).unwrap();
    assert_eq!(a, pair(&[([1, 0, 1, 0], i(-1, 1)), ([0, 0, 0, 0], i(-1, 2))]));
    assert!(a.is_hermitian());
}

#[test]
fn z_conjugation_is_an_algebra_map() {
    let ops = [xi_lift(&sym("q^2*p")).unwrap(), xi_lift(&sym("p^3 + q")).unwrap(), Generator::var(1)];
    for x in &ops {
        for y in &ops {
            assert_eq!(z_conjugate(&x.compose(y)), z_conjugate(x).compose(&z_conjugate(y)));
        }
    }
}

#[test]
fn split_examples() {
    let a = split_test(&z_conjugate(&xi_lift(&sym("q^3")).unwrap())).unwrap();
    assert_eq!(a, pair(&[([3, 0, 0, 0], r(1, 1))]));
    let bad = g(&[([2, 0, 0, 1], i(1, 1))]);
    let rej = split_test(&z_conjugate(&bad)).unwrap_err();
    assert_eq!(rej.reason, RejectReason::CrossTerm);
    assert!(!rej.witness.is_zero());
    assert!(split_test(&PairOp::zero()).unwrap().is_zero());
    let lopsided = pair(&[([1, 0, 0, 0], r(1, 1)), ([0, 1, 0, 0], r(1, 1))]);
    assert_eq!(split_test(&lopsided).unwrap_err().reason, RejectReason::Mismatch);
    let skew = pair(&[([1, 0, 1, 0], r(1, 1)), ([0, 1, 0, 1], r(-1, 1))]);
    assert_eq!(split_test(&skew).unwrap_err().reason, RejectReason::NotHermitian);
    assert_eq!(split_test(&PairOp::scalar(r(1, 1))).unwrap_err().reason, RejectReason::RealConstant);
}

#[test]
fn reading_off_observables() {
    assert_eq!(read_off_generator(&g(&[([0, 0, 0, 1], i(1, 1))])).unwrap(), sym("q"));
    assert_eq!(read_off_generator(&g(&[([1, 0, 0, 1], i(2, 1))])).unwrap(), sym("q^2"));
    assert!(read_off_generator(&g(&[([2, 0, 0, 1], i(1, 1))])).is_err());
}

#[test]
fn planck_constant_in_the_factorization() {
    let two = q(2, 1);
    let dp = g(&[([0, 0, 0, 1], i(1, 1))]);
    let dq = g(&[([0, 0, 1, 0], i(-1, 1))]);
    assert_eq!(z_conjugate_hbar(&dp, &two), pair(&[([1, 0, 0, 0], r(1, 2)), ([0, 1, 0, 0], r(-1, 2))]));
    let x = hilbert_generator(&dp, &two).unwrap();
    let p = hilbert_generator(&dq, &two).unwrap();
    assert_eq!(x, pair(&[([1, 0, 0, 0], r(1, 1))]));
    assert_eq!(p, pair(&[([0, 0, 1, 0], i(-2, 1))]));
    assert_eq!(x.commutator(&p).as_scalar(), Some(i(2, 1)));
    let as_ops = xop_to_ncpoly(&p, &two);
    assert!(as_ops.same_operator(&Operator::p()));
    assert_eq!(ncpoly_to_xop(&as_ops, &two), p);
}

#[test]
fn monomial_formula_examples() {
    assert_eq!(xi_monomial::<BigRational>(1, 0), g(&[([0, 0, 0, 1], i(1, 1))]));
    assert_eq!(xi_monomial::<BigRational>(1, 1), g(&[([0, 1, 0, 1], i(1, 1)), ([1, 0, 1, 0], i(-1, 1))]));
    // the mixed cubic carries i/4 on the third-order term
    assert_eq!(
        xi_monomial::<BigRational>(2, 1),
        g(&[([1, 1, 0, 1], i(2, 1)), ([2, 0, 1, 0], i(-1, 1)), ([0, 0, 1, 2], i(1, 4))])
    );
}

#[test]
fn monomial_formula_matches_lift() {
    for m in 0..=6 {
        for n in 0..=6 {
            assert_eq!(xi_monomial::<BigRational>(m, n), xi_lift(&Symbol::monomial(m, n)).unwrap(), "q^{m} p^{n}");
        }
    }
}

#[test]
fn table_rows() {
    let report = table1_check::<BigRational>();
    assert_eq!(report.rows.len(), 10);
    assert!(report.rows.iter().all(|r| r.symbol_matches()));
    assert!(report.generic_failures.is_empty());
    assert_eq!(report.generic_cases, 21);
    assert!(report.potential_matches);
    let bad: Vec<&str> = report.mismatched_rows().iter().map(|r| r.label).collect();
    assert_eq!(bad, ["QPQ", "PQP"]);
    for row in report.mismatched_rows() {
        let key = if row.label == "QPQ" { [0, 0, 1, 2] } else { [0, 0, 2, 1] };
        assert_eq!(row.printed_alpha.coeff(key), row.computed_alpha.coeff(key) * r(1, 2));
        let mut fixed = row.printed_alpha.clone();
        fixed.add_term(key, row.printed_alpha.coeff(key));
        assert_eq!(fixed, row.computed_alpha);
    }
    let msg = report.into_result().unwrap_err();
    assert!(msg.contains("row QPQ") && msg.contains("row PQP"));
}

#[test]
fn lift_is_not_an_algebra_map() {
    let d = anticommutator_defect(&sym("q"), &sym("p"));
    let want = g(&[([0, 0, 1, 1], r(2, 1)), ([0, 1, 0, 1], i(-2, 1)), ([1, 0, 1, 0], i(2, 1))]);
    assert_eq!(d, want);
}

#[test]
fn gaussian_action() {
    // i dp exp(-q^2-p^2) = -2ip exp(-q^2-p^2)
    assert_eq!(g(&[([0, 0, 0, 1], i(1, 1))]).apply_to_gaussian(), sym("-2i*p"));
    let lap = g(&[([0, 0, 2, 0], r(1, 1))]);
    assert_eq!(lap.apply_to_gaussian(), sym("4q^2 - 2"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn lift_acts_as_star_commutator(a in real_poly(5, 5), b in poly(5, 5)) {
        let alpha = xi_lift(&a).unwrap();
        let want = &star_symbolic(&a, &b) - &star_symbolic(&b, &a);
        prop_assert_eq!(alpha.apply(&b), want);
    }

    #[test]
    fn lie_homomorphism(a in real_poly(5, 4), b in real_poly(5, 4)) {
        let lhs = xi_lift(&a).unwrap().commutator(&xi_lift(&b).unwrap());
        let rhs = xi_lift(&moyal_symbolic(&a, &b)).unwrap().scale(&i(1, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constants_are_invisible(a in real_poly(5, 5), k in rational()) {
        let shifted = &a + &Symbol::constant(Cq::new(k, q(0, 1)));
        prop_assert_eq!(xi_lift(&shifted).unwrap(), xi_lift(&a).unwrap());
    }

    #[test]
    fn read_off_inverts_lift(a in real_poly(5, 5)) {
        let alpha = xi_lift(&a).unwrap();
        let back = read_off_generator(&alpha).unwrap();
        prop_assert_eq!(back.clone(), a.without_constant());
        prop_assert_eq!(xi_lift(&back).unwrap(), alpha);
    }

    #[test]
    fn lifted_generators_are_hermitian_and_imaginary(a in real_poly(5, 5)) {
        let alpha = xi_lift(&a).unwrap();
        prop_assert!(alpha.is_pure_imaginary());
        prop_assert_eq!(alpha.adjoint(), alpha.clone());
        prop_assert!((&alpha + &alpha.transpose()).is_zero());
    }

    #[test]
    fn generic_row_pattern(a in real_poly(5, 6)) {
        prop_assert_eq!(generic_row_alpha(&a), xi_lift(&a).unwrap());
    }
}
