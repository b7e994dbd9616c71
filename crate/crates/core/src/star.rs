//! Star products and Moyal brackets of phase functions.

use ndarray::{Array2, Axis};
use num_complex::Complex;
use rayon::prelude::*;

use crate::error::GridError;
use crate::grid::GridSpec;
use crate::scalar::Real;
use crate::wigner::{weyl_wigner, weyl_wigner_inv, KernelMatrix, PhaseFunction};

/// `A * B = W(W^-1(A) W^-1(B) dx)`.
pub fn star<T: Real>(a: &PhaseFunction<T>, b: &PhaseFunction<T>) -> Result<PhaseFunction<T>, GridError> {
    a.grid.check_same(&b.grid)?;
    let ka = weyl_wigner_inv(a);
    let kb = weyl_wigner_inv(b);
    Ok(weyl_wigner(&ka.compose(&kb)?))
}

/// Direct quadrature of
/// `(A*B)(q1,p1) = pi^-2 int A(q2,p2) B(q3,p3)
///     exp(-2i[p1(q2-q3) + p2(q3-q1) + p3(q1-q2)])`
/// over the grid cells.
///
/// The four-fold Riemann sum is regrouped: the `p2` and `p3` sums are
/// tabulated against every centre difference first, which leaves a sum over
/// `(q2, q3)` that only depends on `q2 - q3` once `q1` is fixed.
pub fn star_twisted_oracle<T: Real>(
    a: &PhaseFunction<T>,
    b: &PhaseFunction<T>,
) -> Result<PhaseFunction<T>, GridError> {
    a.grid.check_same(&b.grid)?;
    let oracle = TwistedOracle::new(a.grid);
    Ok(oracle.product(&oracle.tabulate(a), &oracle.tabulate(b)))
}

/// Reusable pieces of [`star_twisted_oracle`] for one grid.
pub struct TwistedOracle<T> {
    grid: GridSpec<T>,
    /// `phase[k][d + off] = exp(-2i p_k d dq)`.
    phase: Array2<Complex<T>>,
}

/// `sum_k F(c, k) exp(-2i p_k d dq) dp` for every row `c` and difference `d`.
pub struct TwistedTable<T>(Array2<Complex<T>>);

impl<T: Real> TwistedOracle<T> {
    pub fn new(grid: GridSpec<T>) -> Self {
        let n = grid.n();
        let span = 4 * n - 1;
        let off = (2 * n - 1) as isize;
        let two = T::lit(2.0);
        let phase = Array2::from_shape_fn((n, span), |(k, di)| {
            let d = T::from_isize_lossy(di as isize - off) * grid.dq();
            Complex::from_polar(T::one(), -two * grid.p(k) * d)
        });
        Self { grid, phase }
    }

    pub fn tabulate(&self, f: &PhaseFunction<T>) -> TwistedTable<T> {
        let n = self.grid.n();
        let rows = 2 * n;
        let span = self.phase.ncols();
        let dp = self.grid.dp();
        let mut t = Array2::from_elem((rows, span), Complex::new(T::zero(), T::zero()));
        t.axis_iter_mut(Axis(0)).into_par_iter().enumerate().for_each(|(c, mut row)| {
            for (di, slot) in row.iter_mut().enumerate() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc = acc + f.entries[[c, k]] * self.phase[[k, di]];
                }
                *slot = acc * dp;
            }
        });
        TwistedTable(t)
    }

    pub fn product(&self, ta: &TwistedTable<T>, tb: &TwistedTable<T>) -> PhaseFunction<T> {
        let (ta, tb) = (&ta.0, &tb.0);
        let n = self.grid.n();
        let rows = 2 * n;
        let span = self.phase.ncols();
        let off = rows - 1;
        let dq = self.grid.dq();
        let pref = dq * dq / (T::PI() * T::PI());
        let mut out = Array2::from_elem((rows, n), Complex::new(T::zero(), T::zero()));
        out.axis_iter_mut(Axis(0)).into_par_iter().enumerate().for_each(|(c1, mut row)| {
            // h[delta + off] = sum_{c2 - c3 = delta} A~(c2, c3 - c1) B~(c3, c1 - c2)
            let mut h = vec![Complex::new(T::zero(), T::zero()); span];
            for c2 in 0..rows {
                let ib = c1 + off - c2;
                for c3 in 0..rows {
                    let ia = c3 + off - c1;
                    h[c2 + off - c3] = h[c2 + off - c3] + ta[[c2, ia]] * tb[[c3, ib]];
                }
            }
            for (k, r) in row.iter_mut().enumerate() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (di, hv) in h.iter().enumerate() {
                    acc = acc + hv * self.phase[[k, di]];
                }
                *r = acc * pref;
            }
        });
        PhaseFunction { grid: self.grid, entries: out, layout: Default::default() }
    }
}

/// `-i (A*B - B*A)`.
pub fn moyal_bracket<T: Real>(a: &PhaseFunction<T>, b: &PhaseFunction<T>) -> Result<PhaseFunction<T>, GridError> {
    let ab = star(a, b)?;
    let ba = star(b, a)?;
    let mi = Complex::new(T::zero(), -T::one());
    ab.zip_with(&ba, |x, y| (x - y) * mi)
}

/// The star-algebra unit on the grid, `W(I/dx)`.
pub fn discrete_identity<T: Real>(grid: GridSpec<T>) -> PhaseFunction<T> {
    weyl_wigner(&KernelMatrix::identity(grid))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityResidual<T> {
    /// `max |W*W - W/2pi|`.
    pub r1: T,
    /// `|2pi sum W^2 cell - 1| + |sum W cell - 1|`.
    pub r2: T,
}

pub fn purity_residual<T: Real>(w: &PhaseFunction<T>) -> PurityResidual<T> {
    let two_pi = T::PI() + T::PI();
    let ww = star(w, w).expect("same grid");
    let target = w.scale(Complex::new(T::one() / two_pi, T::zero()));
    let r1 = ww.max_abs_diff(&target);
    let cell = w.grid.cell();
    let sq = w.entries.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()) * cell;
    let tot = w.integral().re;
    let r2 = (two_pi * sq - T::one()).abs() + (tot - T::one()).abs();
    PurityResidual { r1, r2 }
}

/// `max(|U*conj(U) - 1|, |conj(U)*U - 1|)` with `1 = W(I/dx)`.
pub fn star_unitary_residual<T: Real>(u: &PhaseFunction<T>) -> T {
    let id = discrete_identity(u.grid);
    let uc = u.conj();
    let left = star(u, &uc).expect("same grid");
    let right = star(&uc, u).expect("same grid");
    left.max_abs_diff(&id).max(right.max_abs_diff(&id))
}
