use ndarray::Array2;
use num_complex::Complex64;
use phasespace::{hermite_basis, make_grid, parity, z_map, Phase64};
use phasespace_reps::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_kernel(n: usize, rng: &mut ChaCha8Rng) -> Array2<Complex64> {
    Array2::from_shape_fn((n, n), |_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

#[test]
fn conjugation_on_random_kernels() {
    let grid = make_grid(32, 0.3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ks: Vec<_> = (0..20).map(|_| random_kernel(32, &mut rng)).collect();
    for c in time_reversal_check(grid, &ks, 1e-12).unwrap() {
        assert!(c.holds, "{} {}", c.name, c.residual);
    }
}

#[test]
fn real_symmetric_kernel_is_fixed() {
    let grid = make_grid(16, 0.4).unwrap();
    let f = Array2::from_shape_fn((16, 16), |(i, j)| Complex64::new(1.0 / (1.0 + (i + j) as f64), 0.0));
    let out = time_reversal_kernel(grid, &f).unwrap();
    let err = out.iter().zip(f.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(err < 1e-12);
}

#[test]
fn phased_basis_product_is_conjugated() {
    let grid = make_grid(64, 0.2).unwrap();
    let b = hermite_basis(&grid, 2).unwrap();
    let (e0, e1) = (b.get(0), b.get(1));
    let f = Array2::from_shape_fn((64, 64), |(i, j)| Complex64::new(0.0, e0[i] * e1[j]));
    let out = time_reversal_kernel(grid, &f).unwrap();
    let err = out.iter().zip(f.iter()).map(|(a, b)| (a - b.conj()).norm()).fold(0.0, f64::max);
    assert!(err < 1e-12, "{err}");
}

#[test]
fn element_squares_to_identity() {
    use TimeReversal::*;
    assert_eq!(Reversal.compose(Reversal), Identity);
    assert_eq!(Reversal.compose(Identity), Reversal);
    let grid = make_grid(16, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = z_map(grid, &random_kernel(16, &mut rng)).unwrap();
    assert_eq!(time_reversal_action(Reversal, &time_reversal_action(Reversal, &w)), w);
    assert_eq!(time_reversal_action(Identity, &w), w);
}

#[test]
fn real_phase_function_reverses_momentum() {
    let grid = make_grid(32, 0.25).unwrap();
    let f = Phase64::from_real_fn(grid, |q, p| (-(q * q) - (p - 0.5).powi(2)).exp() * (1.0 + 0.3 * p));
    let out = time_reversal_action(TimeReversal::Reversal, &f);
    assert_eq!(out, parity(&f));
    for c in 0..64 {
        for k in 1..32 {
            assert_eq!(out.at(c, k), f.at(c, 32 - k));
        }
    }
}

#[test]
fn parity_alone_is_not_conjugation_on_complex_kernels() {
    let grid = make_grid(16, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_kernel(16, &mut rng);
    let out = phasespace::z_inv(&parity(&z_map(grid, &f).unwrap()));
    let err = out.iter().zip(f.iter()).map(|(a, b)| (a - b.conj()).norm()).fold(0.0, f64::max);
    assert!(err > 1e-3);
}
