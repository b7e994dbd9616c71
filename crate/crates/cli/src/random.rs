//! Seeded random inputs for the property checks.

use ndarray::Array2;
use num_complex::Complex;
use phasespace::{BasisFamily, Grid64, Kernel64, C64};
use phasespace_symbolic::{BigRational, Cq, Letter, Operator, Symbol};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn kernel(g: Grid64, rng: &mut ChaCha8Rng) -> Kernel64 {
    let n = g.n();
    let e = Array2::from_shape_fn((n, n), |_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let nrm = e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Kernel64::new(g, e.mapv(|z| z / nrm)).expect("square")
}

pub fn hermitian(g: Grid64, rng: &mut ChaCha8Rng) -> Kernel64 {
    let k = kernel(g, rng);
    let h = (&k.entries + &k.entries.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
    Kernel64::new(g, h).expect("square")
}

/// Combination of the first `basis.r_max` basis products.
pub fn smooth_kernel(basis: &BasisFamily<f64>, rng: &mut ChaCha8Rng) -> Kernel64 {
    let mut k = Kernel64::zeros(basis.grid);
    for r in 0..basis.r_max {
        for s in 0..basis.r_max {
            let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            k.entries = &k.entries + &Kernel64::basis_element(basis, r, s).entries.mapv(|z| z * c);
        }
    }
    k
}

/// Normalised superposition of the first `r` basis functions.
pub fn superposition(basis: &BasisFamily<f64>, r: usize, rng: &mut ChaCha8Rng) -> ndarray::Array1<C64> {
    let mut v: ndarray::Array1<C64> = ndarray::Array1::zeros(basis.grid.n());
    for k in 0..r {
        let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        v = v + basis.complex(k).mapv(|z| z * c);
    }
    let nrm = (v.iter().map(|z| z.norm_sqr()).sum::<f64>() * basis.grid.dx()).sqrt();
    v.mapv(|z| z / nrm)
}

fn rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.random_range(-6i64..=6).into(), rng.random_range(1i64..=4).into())
}

fn coefficient(rng: &mut ChaCha8Rng, real: bool) -> Cq {
    let im = if real { BigRational::from_integer(0.into()) } else { rational(rng) };
    Complex::new(rational(rng), im)
}

/// Random polynomial of total degree at most `deg`.
pub fn symbol(rng: &mut ChaCha8Rng, deg: u32, real: bool) -> Symbol {
    let mut s = Symbol::zero();
    for a in 0..=deg {
        for b in 0..=deg - a {
            if rng.random_bool(0.5) {
                s = &s + &Symbol::term(coefficient(rng, real), a, b);
            }
        }
    }
    s
}

/// Random sum of up to four words of length at most `len`.
pub fn operator(rng: &mut ChaCha8Rng, len: usize) -> Operator {
    let mut out = Operator::zero();
    for _ in 0..rng.random_range(1..=4) {
        let l = rng.random_range(0..=len);
        let w = (0..l).map(|_| if rng.random_bool(0.5) { Letter::Q } else { Letter::P }).collect();
        out = &out + &Operator::word(coefficient(rng, false), w);
    }
    out
}
