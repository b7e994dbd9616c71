//! Time reversal: the two-element group acting by `F(q, p) -> F(q, -p)`.
//!
//! On kernels the same element is complex conjugation, an antiunitary map.
//! It is never pushed through the transform directly; the phase-space side
//! is parity composed with conjugation of the phase function, which for a
//! real `F` is parity alone.

use ndarray::Array2;
use num_complex::Complex;
use phasespace::{parity, z_inv, z_map, GridSpec, PhaseFunction, Real};
use serde::Serialize;

use crate::error::RepsError;
use crate::report::RelationCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TimeReversal {
    Identity,
    Reversal,
}

impl TimeReversal {
    pub fn compose(self, other: Self) -> Self {
        if self == other {
            TimeReversal::Identity
        } else {
            TimeReversal::Reversal
        }
    }
}

/// Phase-space action. For complex `F` this is parity after conjugation,
/// which agrees with `F(q, -p)` whenever `F` is real.
pub fn time_reversal_action<T: Real>(g: TimeReversal, f: &PhaseFunction<T>) -> PhaseFunction<T> {
    match g {
        TimeReversal::Identity => f.clone(),
        TimeReversal::Reversal => parity(&f.conj()),
    }
}

/// Kernel-side image: `z_inv(action(z_map(f)))`, which should be `conj(f)`.
pub fn time_reversal_kernel<T: Real>(
    grid: GridSpec<T>,
    f: &Array2<Complex<T>>,
) -> Result<Array2<Complex<T>>, RepsError> {
    Ok(z_inv(&time_reversal_action(TimeReversal::Reversal, &z_map(grid, f)?)))
}

fn max_diff<T: Real>(a: &Array2<Complex<T>>, b: &Array2<Complex<T>>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm().as_f64()).fold(0.0, f64::max)
}

/// Checks on a batch of kernels: conjugation is reproduced to `tol`, the
/// action squares to the identity exactly, and agrees with parity on the
/// phase function of a hermitian kernel.
pub fn time_reversal_check<T: Real>(
    grid: GridSpec<T>,
    kernels: &[Array2<Complex<T>>],
    tol: f64,
) -> Result<Vec<RelationCheck>, RepsError> {
    let mut conj_worst: f64 = 0.0;
    let mut involution_exact = true;
    let mut parity_worst: f64 = 0.0;
    for f in kernels {
        let out = time_reversal_kernel(grid, f)?;
        conj_worst = conj_worst.max(max_diff(&out, &f.mapv(|z| z.conj())));
        let w = z_map(grid, f)?;
        let twice = time_reversal_action(TimeReversal::Reversal, &time_reversal_action(TimeReversal::Reversal, &w));
        involution_exact &= twice == w;
        let herm = f + &f.t().mapv(|z| z.conj());
        let wh = z_map(grid, &herm)?;
        parity_worst = parity_worst.max(max_diff(
            &time_reversal_action(TimeReversal::Reversal, &wh).entries,
            &parity(&wh).entries,
        ));
    }
    Ok(vec![
        RelationCheck::numeric("z_inv(parity(conj(z_map f))) = conj f", conj_worst, tol),
        RelationCheck::flag("action squares to identity", involution_exact),
        RelationCheck::numeric("action = parity on real phase functions", parity_worst, tol),
    ])
}
