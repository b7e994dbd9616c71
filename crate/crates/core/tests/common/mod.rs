#![allow(dead_code)]

use ndarray::Array2;
use phasespace::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_kernel(g: Grid64, rng: &mut ChaCha8Rng) -> Kernel64 {
    let n = g.n();
    let e = Array2::from_shape_fn((n, n), |_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let k = Kernel64::new(g, e).unwrap();
    let nrm = k.hs_inner(&k).unwrap().re.sqrt();
    Kernel64 { grid: g, entries: k.entries.mapv(|z| z / nrm) }
}

pub fn random_hermitian(g: Grid64, rng: &mut ChaCha8Rng) -> Kernel64 {
    let k = random_kernel(g, rng);
    Kernel64 { grid: g, entries: (&k.entries + &k.adjoint().entries).mapv(|z| z * 0.5) }
}

/// Smooth, well-localised kernel built from the first few basis functions.
pub fn random_smooth_kernel(basis: &Basis64, rng: &mut ChaCha8Rng) -> Kernel64 {
    let g = basis.grid;
    let mut k = Kernel64::zeros(g);
    for r in 0..basis.r_max {
        for s in 0..basis.r_max {
            let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            k.entries = &k.entries + &Kernel64::basis_element(basis, r, s).entries.mapv(|z| z * c);
        }
    }
    k
}
