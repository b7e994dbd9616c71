use phasespace_reps::*;
use phasespace_symbolic::{BigRational, Symbol};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn sym(s: &str) -> Symbol {
    s.parse().unwrap()
}

#[test]
fn case_a_generators_and_symbols() {
    let r = sp2_generators(&Sp2Params::case_a()).unwrap();
    assert_eq!(r.symbols[0], sym("(1/2)q*p"));
    assert_eq!(r.symbols[1], sym("(1/4)(q^2 - p^2)"));
    assert_eq!(r.symbols[2], sym("(1/4)(q^2 + p^2)"));
    assert!(r.factorization.all_hold(), "{:?}", r.factorization.relations);
}

#[test]
fn case_a_casimir() {
    let r = sp2_generators(&Sp2Params::case_a()).unwrap();
    let c = r.factorization.casimir.clone().unwrap();
    assert_eq!(c.re, rat(-3, 16));
    assert_eq!(c.im, rat(0, 1));
}

#[test]
fn case_b_generators_and_symbols() {
    let a = rat(3, 2);
    let r = sp2_generators(&Sp2Params::case_b(a)).unwrap();
    assert_eq!(r.symbols[0], sym("(1/2)q - (1/2)q*p^2 + (3/4)*p"));
    assert_eq!(r.symbols[1], sym("q*p"));
    assert_eq!(r.symbols[2], sym("-(1/2)q - (1/2)q*p^2 + (3/4)*p"));
    assert!(r.generators[0].terms().any(|(k, _)| k[2] + k[3] == 3));
    assert!(r.factorization.all_hold(), "{:?}", r.factorization.relations);
}

#[test]
fn case_b_casimir_for_several_parameters() {
    for a in [rat(0, 1), rat(1, 1), rat(2, 1), rat(-5, 3)] {
        let p = Sp2Params::case_b(a.clone());
        let r = sp2_generators(&p).unwrap();
        assert!(r.factorization.all_hold());
        let c = r.factorization.casimir.clone().unwrap();
        assert_eq!(c.re, expected_casimir(&p), "a = {a}");
        assert_eq!(c.re, -(&a * &a + rat(1, 1)) / rat(4, 1));
        assert_ne!(c.re, rat(-3, 16));
    }
}

#[test]
fn forced_constants_are_real() {
    for p in [Sp2Params::case_a(), Sp2Params::case_b(rat(2, 1))] {
        let r = sp2_generators(&p).unwrap();
        for (name, c) in &r.factorization.additive_constants {
            assert_eq!(c.im, rat(0, 1), "{name}");
        }
    }
}

#[test]
fn broken_generator_is_caught() {
    let [a1, a2, mut a3] = sp2_phase_generators(&Sp2Params::case_a());
    a3 = a3.scale(&num_complex::Complex::new(rat(2, 1), rat(0, 1)));
    let i = num_complex::Complex::new(rat(0, 1), rat(1, 1));
    assert_ne!(a1.commutator(&a2), a3.scale(&-i));
}

#[test]
fn report_serialises_casimir() {
    let r = sp2_generators(&Sp2Params::case_b(rat(1, 1))).unwrap().factorization.report();
    assert_eq!(r.casimir_value.as_deref(), Some("-1/2"));
    assert_eq!(r.example, "sp2-case-B(a=1)");
    assert_eq!(r.max_residual, 0.0);
    assert_eq!(r.factorized_generators_pretty.len(), 3);
}
