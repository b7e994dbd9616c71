use num_complex::Complex64;
use phasespace::{make_grid, Phase64};
use phasespace_reps::*;
use phasespace_symbolic::{BigRational, Generator, LineOp};
use proptest::prelude::*;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn smooth(n: usize, dx: f64) -> Phase64 {
    Phase64::from_real_fn(make_grid(n, dx).unwrap(), |q, p| (-(q - 0.3).powi(2) - 0.5 * p * p + 0.2 * q * p).exp())
}

#[test]
fn identity_element_is_identity() {
    let f = smooth(16, 0.5);
    assert_eq!(hw_action(&HW64::identity(), &f).unwrap(), f);
}

#[test]
fn action_shifts_arguments() {
    let f = smooth(32, 0.25);
    let g = HW64::new(3.0 * f.grid.dx(), -2.0 * f.grid.dp());
    let out = hw_action(&g, &f).unwrap();
    for c in 10..50 {
        for k in 4..28 {
            let (q, p) = (f.grid.q(c), f.grid.p(k));
            let expect = (-(q + g.a1 - 0.3).powi(2) - 0.5 * (p - g.a2).powi(2) + 0.2 * (q + g.a1) * (p - g.a2)).exp();
            assert!((out.at(c, k).re - expect).abs() < 1e-12);
        }
    }
}

#[test]
fn off_lattice_shift_is_rejected() {
    let f = smooth(16, 0.5);
    let e = hw_action(&HW64::new(0.1, 0.0), &f).unwrap_err();
    assert!(matches!(e, RepsError::OffLattice { axis: "q", .. }));
    // half a lattice step lands between x points
    let e = hw_action(&HW64::new(f.grid.dq(), 0.0), &f).unwrap_err();
    assert!(matches!(e, RepsError::OffLattice { axis: "q", .. }));
    let e = hw_action(&HW64::new(0.0, 0.3 * f.grid.dp()), &f).unwrap_err();
    assert!(matches!(e, RepsError::OffLattice { axis: "p", .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_shifts_compose_exactly(s in proptest::collection::vec(-40i32..40, 4)) {
        let f = smooth(16, 0.5);
        let (dq, dp) = (f.grid.dx(), f.grid.dp());
        let a = HW64::new(s[0] as f64 * dq, s[1] as f64 * dp);
        let b = HW64::new(s[2] as f64 * dq, s[3] as f64 * dp);
        let two = hw_action(&a, &hw_action(&b, &f).unwrap()).unwrap();
        prop_assert_eq!(two, hw_action(&a.compose(&b), &f).unwrap());
    }
}

#[test]
fn wrapping_respects_antiperiodic_rows() {
    let f = smooth(16, 0.5);
    let full = HW64::new(0.0, 16.0 * f.grid.dp());
    let out = hw_action(&full, &f).unwrap();
    for c in 0..32 {
        for k in 0..16 {
            let sign = if c % 2 == 1 { -1.0 } else { 1.0 };
            assert_eq!(out.at(c, k), f.at(c, k) * sign);
        }
    }
    assert_eq!(hw_action(&full, &out).unwrap(), f);
}

#[test]
fn finite_difference_generator_approaches_dq() {
    let mut prev = f64::INFINITY;
    for (n, dx) in [(32, 0.4), (64, 0.2), (128, 0.1)] {
        let f = smooth(n, dx);
        let d = f.grid.dx();
        let moved = hw_action(&HW64::new(d, 0.0), &f).unwrap();
        let mut err: f64 = 0.0;
        for c in n / 2..3 * n / 2 {
            for k in n / 4..3 * n / 4 {
                let (q, p) = (f.grid.q(c), f.grid.p(k));
                let val = (-(q - 0.3).powi(2) - 0.5 * p * p + 0.2 * q * p).exp();
                let dfdq = (-2.0 * (q - 0.3) + 0.2 * p) * val;
                let fd = (moved.at(c, k).re - f.at(c, k).re) / d;
                err = err.max((fd - dfdq).abs());
            }
        }
        assert!(err < 2.0 * d, "{err} at step {d}");
        assert!(err < prev);
        prev = err;
    }
}

#[test]
fn phase_space_generators_commute() {
    let [a1, a2] = hw_generators();
    assert_eq!(a1.to_string(), "-i*dq");
    assert_eq!(a2.to_string(), "i*dp");
    assert!(a1.commutator(&a2).is_zero());
}

#[test]
fn factorisation_for_two_values_of_hbar() {
    for h in [1, 2] {
        let r = hw_factorize(&rat(h)).unwrap();
        assert!(r.all_hold(), "{:?}", r.relations);
        let comm = r.hilbert("A2").unwrap().commutator(r.hilbert("A1").unwrap());
        assert_eq!(comm, LineOp::scalar(num_complex::Complex::new(rat(0), rat(h))));
        assert_eq!(r.hilbert("A2").unwrap().to_string(), "x");
    }
    assert_eq!(hw_factorize(&rat(2)).unwrap().hilbert("A1").unwrap().to_string(), "-2i*dx");
}

#[test]
fn hilbert_action_is_projective() {
    let u = |x: f64| Complex64::new((-x * x).exp(), 0.3 * x);
    let xs: Vec<f64> = (-20..=20).map(|k| 0.15 * k as f64).collect();
    let a = HW64::new(0.4, 0.9).with_hbar(2.0);
    let b = HW64::new(-0.7, 0.25).with_hbar(2.0);
    assert!(hw_cocycle_residual(a, b, u, &xs) < 1e-12);
    assert!((hw_cocycle(&a, &b) - 0.05).abs() < 1e-15);
    // without the phase the composition fails
    let lhs = hw_hilbert_action(a, hw_hilbert_action(b, u));
    let rhs = hw_hilbert_action(a.compose(&b), u);
    assert!((lhs(0.2) - rhs(0.2)).norm() > 1e-3);
}

#[test]
fn tower_levels_match_reference_cases() {
    assert_eq!(tower_beta(1).to_string(), "i*dp");
    assert_eq!(tower_beta(3).to_string(), "-(1/24)i*dp^3 + (1/2)i*q^2*dp");
    assert_eq!(tower_beta(2).to_string(), "i*q*dp");
    assert!(tower_beta(4).terms().all(|(k, _)| (4 - k[0]) % 2 == 1));
}

#[test]
fn tower_reads_off_to_powers_of_x() {
    let levels = gen_heisenberg_tower(8).unwrap();
    assert_eq!(levels.len(), 8);
    assert_eq!(levels[2].hilbert.to_string(), "(1/6)*x^3");
    for c in tower_checks(&levels) {
        assert!(c.holds, "{}", c.name);
    }
    assert!(gen_heisenberg_tower(0).is_err());
    assert!(gen_heisenberg_tower(9).is_err());
}

#[test]
fn tower_bottom_is_annihilated_by_translation() {
    let [d, _] = hw_generators();
    assert_eq!(d.commutator(&tower_beta(1)), Generator::zero());
}
