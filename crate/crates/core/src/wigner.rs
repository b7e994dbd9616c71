//! The discrete Weyl-Wigner transform between kernel matrices and phase
//! functions.
//!
//! A phase function has `2n` rows on the centre axis `q_c = (c - n) dx/2`
//! and `n` columns `p_k = (k - n/2) dp`. Row `c` collects the kernel entries
//! `(i, j)` with `i + j = c`; their offsets `y = x_j - x_i` are even multiples
//! of `dx` when `c` is even and odd multiples when `c` is odd. Each row is a
//! length-`n` DFT over those offsets, so odd rows are antiperiodic in `p`.
//! The last row (`c = 2n - 1`) holds no kernel entries and is always zero.

use ndarray::{Array1, Array2, Axis};
use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::GridError;
use crate::grid::{BasisFamily, GridSpec};
use crate::scalar::Real;

/// Sampled operator kernel, entry `(i, j) = A_K(x_i, x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix<T> {
    pub grid: GridSpec<T>,
    pub entries: Array2<Complex<T>>,
}

/// Marker for the double-density row layout described in the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum ParityLayout {
    /// Even rows: integer offsets, periodic in `p`. Odd rows: half offsets,
    /// antiperiodic in `p`.
    #[default]
    EvenIntegerOddHalf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFunction<T> {
    pub grid: GridSpec<T>,
    pub entries: Array2<Complex<T>>,
    pub layout: ParityLayout,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    pub grid: GridSpec<T>,
    pub entries: Array1<Complex<T>>,
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn max_abs<T: Real>(it: impl Iterator<Item = Complex<T>>) -> T {
    it.fold(T::zero(), |m, z| m.max(z.norm()))
}

impl<T: Real> KernelMatrix<T> {
    pub fn new(grid: GridSpec<T>, entries: Array2<Complex<T>>) -> Result<Self, GridError> {
        let n = grid.n();
        if entries.dim() != (n, n) {
            return Err(GridError::Shape { expected: (n, n), got: entries.dim() });
        }
        Ok(Self { grid, entries })
    }

    pub fn zeros(grid: GridSpec<T>) -> Self {
        let n = grid.n();
        Self { grid, entries: Array2::from_elem((n, n), czero()) }
    }

    pub fn from_fn(grid: GridSpec<T>, f: impl Fn(T, T) -> Complex<T>) -> Self {
        let n = grid.n();
        let entries = Array2::from_shape_fn((n, n), |(i, j)| f(grid.x(i), grid.x(j)));
        Self { grid, entries }
    }

    /// Kernel `psi(x) conj(phi(y))` of the rank-one operator `|psi><phi|`.
    pub fn rank_one(grid: GridSpec<T>, psi: &Array1<Complex<T>>, phi: &Array1<Complex<T>>) -> Self {
        let n = grid.n();
        let entries = Array2::from_shape_fn((n, n), |(i, j)| psi[i] * phi[j].conj());
        Self { grid, entries }
    }

    /// Kernel of `|e_r><e_s|`.
    pub fn basis_element(basis: &BasisFamily<T>, r: usize, s: usize) -> Self {
        Self::rank_one(basis.grid, &basis.complex(r), &basis.complex(s))
    }

    /// Kernel of the identity operator, `I / dx`.
    pub fn identity(grid: GridSpec<T>) -> Self {
        let n = grid.n();
        let d = Complex::new(T::one() / grid.dx(), T::zero());
        let entries = Array2::from_shape_fn((n, n), |(i, j)| if i == j { d } else { czero() });
        Self { grid, entries }
    }

    /// Kernel composition `(A B)(x, y) = sum_z A(x, z) B(z, y) dx`.
    pub fn compose(&self, other: &Self) -> Result<Self, GridError> {
        self.grid.check_same(&other.grid)?;
        let mut entries = self.entries.dot(&other.entries);
        let dx = self.grid.dx();
        entries.mapv_inplace(|z| z * dx);
        Ok(Self { grid: self.grid, entries })
    }

    pub fn adjoint(&self) -> Self {
        Self { grid: self.grid, entries: self.entries.t().mapv(|z| z.conj()) }
    }

    pub fn transpose(&self) -> Self {
        Self { grid: self.grid, entries: self.entries.t().to_owned() }
    }

    pub fn conj(&self) -> Self {
        Self { grid: self.grid, entries: self.entries.mapv(|z| z.conj()) }
    }

    /// `max |A(i,j) - conj(A(j,i))|`.
    pub fn hermiticity_defect(&self) -> T {
        let n = self.grid.n();
        let mut m = T::zero();
        for i in 0..n {
            for j in 0..n {
                m = m.max((self.entries[[i, j]] - self.entries[[j, i]].conj()).norm());
            }
        }
        m
    }

    /// `Tr(A^dagger B) dx^2`, the discrete Hilbert-Schmidt product.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex<T>, GridError> {
        self.grid.check_same(&other.grid)?;
        let dx = self.grid.dx();
        let acc = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .fold(czero(), |acc, (a, b)| acc + a.conj() * b);
        Ok(acc * dx * dx)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs(self.entries.iter().zip(other.entries.iter()).map(|(a, b)| a - b))
    }
}

impl<T: Real> PhaseFunction<T> {
    pub fn new(grid: GridSpec<T>, entries: Array2<Complex<T>>) -> Result<Self, GridError> {
        let n = grid.n();
        if entries.dim() != (2 * n, n) {
            return Err(GridError::Shape { expected: (2 * n, n), got: entries.dim() });
        }
        Ok(Self { grid, entries, layout: ParityLayout::default() })
    }

    pub fn zeros(grid: GridSpec<T>) -> Self {
        let n = grid.n();
        Self { grid, entries: Array2::from_elem((2 * n, n), czero()), layout: ParityLayout::default() }
    }

    /// Samples `f(q_c, p_k)` on every row, including the padding row.
    pub fn from_fn(grid: GridSpec<T>, f: impl Fn(T, T) -> Complex<T>) -> Self {
        let n = grid.n();
        let entries = Array2::from_shape_fn((2 * n, n), |(c, k)| f(grid.q(c), grid.p(k)));
        Self { grid, entries, layout: ParityLayout::default() }
    }

    pub fn from_real_fn(grid: GridSpec<T>, f: impl Fn(T, T) -> T) -> Self {
        Self::from_fn(grid, |q, p| Complex::new(f(q, p), T::zero()))
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { grid: self.grid, entries: self.entries.mapv(f), layout: self.layout }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self, GridError> {
        self.grid.check_same(&other.grid)?;
        let mut entries = self.entries.clone();
        entries.zip_mut_with(&other.entries, |a, b| *a = f(*a, *b));
        Ok(Self { grid: self.grid, entries, layout: self.layout })
    }

    pub fn add(&self, other: &Self) -> Result<Self, GridError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GridError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn max_abs(&self) -> T {
        max_abs(self.entries.iter().copied())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs(self.entries.iter().zip(other.entries.iter()).map(|(a, b)| a - b))
    }

    pub fn max_imag(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, z| m.max(z.im.abs()))
    }

    /// `sum A cell`.
    pub fn integral(&self) -> Complex<T> {
        self.entries.iter().fold(czero(), |acc, z| acc + z) * self.grid.cell()
    }

    pub fn at(&self, c: usize, k: usize) -> Complex<T> {
        self.entries[[c, k]]
    }

    /// Entry at `(q, p)` when both are grid points.
    pub fn value_at(&self, q: T, p: T) -> Option<Complex<T>> {
        let g = &self.grid;
        let c = crate::grid::lattice_index(q / g.dq() + T::from_usize_lossy(g.n()), 2 * g.n())?;
        let k = crate::grid::lattice_index(p / g.dp() + T::from_usize_lossy(g.n() / 2), g.n())?;
        Some(self.entries[[c, k]])
    }
}

impl<T: Real> StateVector<T> {
    pub fn new(grid: GridSpec<T>, entries: Array1<Complex<T>>) -> Result<Self, GridError> {
        if entries.len() != grid.n() {
            return Err(GridError::LengthMismatch { left: entries.len(), right: grid.n() });
        }
        Ok(Self { grid, entries })
    }

    pub fn from_fn(grid: GridSpec<T>, f: impl Fn(T) -> Complex<T>) -> Self {
        Self { grid, entries: Array1::from_shape_fn(grid.n(), |j| f(grid.x(j))) }
    }

    pub fn norm(&self) -> T {
        let s = self.entries.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        (s * self.grid.dx()).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let nrm = self.norm();
        Self { grid: self.grid, entries: self.entries.mapv(|z| z / nrm) }
    }
}

/// Kernel index pair feeding slot `m` (`0..n`) of row `c`, if it exists.
#[inline]
pub(crate) fn slot(n: usize, c: usize, m: usize) -> Option<(usize, usize)> {
    let d = 2 * (m as isize - (n / 2) as isize) + (c % 2) as isize;
    let c = c as isize;
    let i = (c - d) / 2;
    let j = (c + d) / 2;
    let n = n as isize;
    (i >= 0 && i < n && j >= 0 && j < n).then_some((i as usize, j as usize))
}

/// `exp(i theta_c(k))`, the phase that turns the raw DFT of row `c` into
/// `sum_m a_m exp(i p_k y_m)`.
fn row_phase<T: Real>(n: usize, c: usize, k: usize) -> Complex<T> {
    let odd = c % 2;
    let sign_exp = (n / 2 + k) % 2;
    let sign = if sign_exp == 0 { T::one() } else { -T::one() };
    if odd == 0 {
        return Complex::new(sign, T::zero());
    }
    let frac = T::PI() * (T::from_usize_lossy(k) / T::from_usize_lossy(n) - T::lit(0.5));
    Complex::from_polar(sign, frac)
}

fn plans<T: Real>(n: usize) -> (Arc<dyn Fft<T>>, Arc<dyn Fft<T>>) {
    let mut planner = FftPlanner::new();
    (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
}

/// `A(q, p) = sum_y K(q - y/2, q + y/2) exp(i p y) 2dx`.
pub fn weyl_wigner<T: Real>(k: &KernelMatrix<T>) -> PhaseFunction<T> {
    let g = k.grid;
    let n = g.n();
    let two_dx = g.dx() + g.dx();
    let (_, inv) = plans::<T>(n);
    let mut out = Array2::from_elem((2 * n, n), czero());
    out.axis_iter_mut(Axis(0)).into_par_iter().enumerate().for_each(|(c, mut row)| {
        if c == 2 * n - 1 {
            return;
        }
        let mut buf = vec![czero::<T>(); n];
        for (m, b) in buf.iter_mut().enumerate() {
            if let Some((i, j)) = slot(n, c, m) {
                let v = k.entries[[i, j]] * two_dx;
                *b = if m % 2 == 0 { v } else { -v };
            }
        }
        inv.process(&mut buf);
        for (kk, r) in row.iter_mut().enumerate() {
            *r = buf[kk] * row_phase::<T>(n, c, kk);
        }
    });
    PhaseFunction { grid: g, entries: out, layout: ParityLayout::default() }
}

/// `K(x, y) = (1/2pi) sum_p A((x+y)/2, p) exp(i p (x - y)) dp`; reads only
/// the slots that correspond to kernel entries.
pub fn weyl_wigner_inv<T: Real>(a: &PhaseFunction<T>) -> KernelMatrix<T> {
    let g = a.grid;
    let n = g.n();
    let scale = g.dp() / (T::PI() + T::PI());
    let (fwd, _) = plans::<T>(n);
    let rows: Vec<Vec<Complex<T>>> = (0..2 * n - 1)
        .into_par_iter()
        .map(|c| {
            let mut buf: Vec<Complex<T>> =
                (0..n).map(|kk| a.entries[[c, kk]] * row_phase::<T>(n, c, kk).conj()).collect();
            fwd.process(&mut buf);
            buf
        })
        .collect();
    let mut entries = Array2::from_elem((n, n), czero());
    for (c, buf) in rows.iter().enumerate() {
        for (m, v) in buf.iter().enumerate() {
            if let Some((i, j)) = slot(n, c, m) {
                let s = if m % 2 == 0 { scale } else { -scale };
                entries[[i, j]] = v * s;
            }
        }
    }
    KernelMatrix { grid: g, entries }
}

/// The intertwiner `Z`: treats a two-variable array as a kernel.
pub fn z_map<T: Real>(grid: GridSpec<T>, f: &Array2<Complex<T>>) -> Result<PhaseFunction<T>, GridError> {
    Ok(weyl_wigner(&KernelMatrix::new(grid, f.clone())?))
}

pub fn z_inv<T: Real>(a: &PhaseFunction<T>) -> Array2<Complex<T>> {
    weyl_wigner_inv(a).entries
}

/// `(P A)(q, p) = A(q, -p)`. Column `k` maps to `n - k`; column 0 maps onto
/// itself through the row's (anti)periodicity.
pub fn parity<T: Real>(a: &PhaseFunction<T>) -> PhaseFunction<T> {
    let n = a.grid.n();
    let entries = Array2::from_shape_fn((2 * n, n), |(c, k)| {
        let v = a.entries[[c, (n - k) % n]];
        if k == 0 && c % 2 == 1 {
            -v
        } else {
            v
        }
    });
    PhaseFunction { grid: a.grid, entries, layout: a.layout }
}

/// Wigner function `(1/2pi) W(|psi><psi|)`.
pub fn wigner_of_state<T: Real>(psi: &StateVector<T>) -> PhaseFunction<T> {
    let nrm = psi.norm();
    if (nrm - T::one()).abs() > T::lit(1e-6) {
        log::warn!("state norm {} differs from 1", nrm);
    }
    let k = KernelMatrix::rank_one(psi.grid, &psi.entries, &psi.entries);
    let w = weyl_wigner(&k);
    let s = T::one() / (T::PI() + T::PI());
    // the kernel is Hermitian, so the exact image is real
    w.map(|z| Complex::new(z.re * s, T::zero()))
}

/// `Phi_rs = W(|e_r><e_s|)`.
pub fn phi_rs<T: Real>(basis: &BasisFamily<T>, r: usize, s: usize) -> PhaseFunction<T> {
    weyl_wigner(&KernelMatrix::basis_element(basis, r, s))
}

/// `(1/2pi) sum conj(A) B cell`.
pub fn inner_k<T: Real>(a: &PhaseFunction<T>, b: &PhaseFunction<T>) -> Result<Complex<T>, GridError> {
    a.grid.check_same(&b.grid)?;
    let acc = a
        .entries
        .iter()
        .zip(b.entries.iter())
        .fold(czero(), |acc, (x, y)| acc + x.conj() * y);
    Ok(acc * a.grid.cell() / (T::PI() + T::PI()))
}
