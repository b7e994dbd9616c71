//! Configuration grids, the Hermite-Gauss test basis and the discrete scalar
//! product on state vectors.

use ndarray::{Array1, Array2};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::scalar::Real;

/// Uniform grid `x_j = (j - n/2) dx`, `j = 0..n`, with conjugate spacing
/// `dp = pi / (n dx)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<T> {
    n: usize,
    dx: T,
    dp: T,
}

pub fn make_grid<T: Real>(n: usize, dx: T) -> Result<GridSpec<T>, GridError> {
    if n % 2 != 0 {
        return Err(GridError::OddPoints(n));
    }
    if n < 4 {
        return Err(GridError::TooFewPoints(n));
    }
    if !(dx > T::zero()) || !dx.is_finite() {
        return Err(GridError::BadSpacing(dx.as_f64()));
    }
    let dp = T::PI() / (T::from_usize_lossy(n) * dx);
    Ok(GridSpec { n, dx, dp })
}

impl<T: Real> GridSpec<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> T {
        self.dx
    }

    pub fn dp(&self) -> T {
        self.dp
    }

    /// Spacing of the double-density centre axis.
    pub fn dq(&self) -> T {
        self.dx / T::lit(2.0)
    }

    pub fn x(&self, j: usize) -> T {
        T::from_isize_lossy(j as isize - (self.n / 2) as isize) * self.dx
    }

    pub fn x_axis(&self) -> Array1<T> {
        Array1::from_shape_fn(self.n, |j| self.x(j))
    }

    /// Centre coordinate of row `c` of a phase function, `c = 0..2n`.
    pub fn q(&self, c: usize) -> T {
        T::from_isize_lossy(c as isize - self.n as isize) * self.dq()
    }

    pub fn p(&self, k: usize) -> T {
        T::from_isize_lossy(k as isize - (self.n / 2) as isize) * self.dp
    }

    pub fn q_axis(&self) -> Array1<T> {
        Array1::from_shape_fn(2 * self.n, |c| self.q(c))
    }

    pub fn p_axis(&self) -> Array1<T> {
        Array1::from_shape_fn(self.n, |k| self.p(k))
    }

    /// Area of one phase-space cell, `(dx/2) dp`.
    pub fn cell(&self) -> T {
        self.dq() * self.dp
    }

    /// Half-width of the configuration axis.
    pub fn extent(&self) -> T {
        T::from_usize_lossy(self.n / 2) * self.dx
    }

    pub fn check_same(&self, other: &Self) -> Result<(), GridError> {
        if self.n == other.n && self.dx == other.dx {
            Ok(())
        } else {
            Err(GridError::GridMismatch {
                n1: self.n,
                dx1: self.dx.as_f64(),
                n2: other.n,
                dx2: other.dx.as_f64(),
            })
        }
    }

    /// Index of `x` on the configuration axis if it is a lattice point.
    pub fn x_index(&self, x: T) -> Option<usize> {
        lattice_index(x / self.dx + T::from_usize_lossy(self.n / 2), self.n)
    }
}

pub(crate) fn lattice_index<T: Real>(t: T, len: usize) -> Option<usize> {
    let r = t.round();
    if (t - r).abs() > T::lit(1e-9) * (T::one() + r.abs()) || r < T::zero() {
        return None;
    }
    let k = r.to_usize()?;
    (k < len).then_some(k)
}

pub const DEFAULT_ORTHONORMALITY_TOL: f64 = 1e-8;

/// The first `r_max` Hermite-Gauss functions sampled on a grid.
#[derive(Debug, Clone)]
pub struct BasisFamily<T> {
    pub grid: GridSpec<T>,
    pub r_max: usize,
    /// Row `r` holds `e_r(x_j)`.
    pub samples: Array2<T>,
    pub residual: T,
    pub tolerance: T,
}

impl<T: Real> BasisFamily<T> {
    pub fn get(&self, r: usize) -> Array1<T> {
        self.samples.row(r).to_owned()
    }

    pub fn complex(&self, r: usize) -> Array1<Complex<T>> {
        self.samples.row(r).mapv(|v| Complex::new(v, T::zero()))
    }

    pub fn is_orthonormal(&self) -> bool {
        self.residual < self.tolerance
    }
}

/// Samples `e_0 .. e_{r_max-1}` with the normalised three-term recurrence
/// `e_{r+1} = sqrt(2/(r+1)) x e_r - sqrt(r/(r+1)) e_{r-1}`.
pub fn hermite_basis<T: Real>(grid: &GridSpec<T>, r_max: usize) -> Result<BasisFamily<T>, GridError> {
    if r_max == 0 {
        return Err(GridError::EmptyBasis);
    }
    let needed = (2.0 * r_max as f64).sqrt() + 4.0;
    if grid.extent().as_f64() < needed {
        log::warn!(
            "grid half-width {} is below the recommended {:.3} for r_max = {}",
            grid.extent(),
            needed,
            r_max
        );
    }
    let n = grid.n();
    let mut samples = Array2::<T>::zeros((r_max, n));
    let norm0 = T::PI().powf(T::lit(-0.25));
    for j in 0..n {
        let x = grid.x(j);
        let mut prev = T::zero();
        let mut cur = norm0 * (-x * x / T::lit(2.0)).exp();
        samples[[0, j]] = cur;
        for r in 1..r_max {
            let rf = T::from_usize_lossy(r - 1);
            let a = (T::lit(2.0) / (rf + T::one())).sqrt();
            let b = (rf / (rf + T::one())).sqrt();
            let next = a * x * cur - b * prev;
            prev = cur;
            cur = next;
            samples[[r, j]] = cur;
        }
    }
    let mut residual = T::zero();
    for r in 0..r_max {
        for s in 0..=r {
            let mut acc = T::zero();
            for j in 0..n {
                acc = acc + samples[[r, j]] * samples[[s, j]];
            }
            let target = if r == s { T::one() } else { T::zero() };
            residual = residual.max((acc * grid.dx() - target).abs());
        }
    }
    Ok(BasisFamily {
        grid: *grid,
        r_max,
        samples,
        residual,
        tolerance: T::lit(DEFAULT_ORTHONORMALITY_TOL),
    })
}

/// `(phi, psi)_H = sum conj(phi_j) psi_j dx`.
pub fn inner_h<T: Real>(
    phi: &Array1<Complex<T>>,
    psi: &Array1<Complex<T>>,
    grid: &GridSpec<T>,
) -> Result<Complex<T>, GridError> {
    if phi.len() != psi.len() {
        return Err(GridError::LengthMismatch { left: phi.len(), right: psi.len() });
    }
    if phi.len() != grid.n() {
        return Err(GridError::LengthMismatch { left: phi.len(), right: grid.n() });
    }
    let acc = phi
        .iter()
        .zip(psi.iter())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
    Ok(acc * grid.dx())
}
