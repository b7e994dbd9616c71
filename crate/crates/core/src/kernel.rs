//! Factorisation of integral-kernel generators: from an automorphism
//! generator `alpha` with kernel `alpha_K(q1,p1,q2,p2)` back to the
//! observable `A` with `alpha B = i{A, B}`.
//!
//! In the variables `u = q2 - q1`, `v = p1 - p2`, `u' = q2 + q1`,
//! `v' = p1 + p2` the kernel becomes `R(u,v,u',v')`, and
//!
//! ```text
//! A(x+, y+) - A(x-, y-) = i int sin(vx + uy) R(u,v,u',v') du dv,
//! x+- = (u' +- x)/2,  y+- = (v' +- y)/2.
//! ```
//!
//! A kernel only comes from some `A` when the right-hand side is itself such
//! a difference; [`autv_residual`] measures how far it is from one.

use std::fmt;
use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::GridSpec;
use crate::scalar::Real;
use crate::wigner::PhaseFunction;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactorizeError {
    #[error("tau and sigma must be positive and epsilon must be +1 or -1")]
    InvalidSpec,
    #[error("admissibility residual {residual:e} exceeds threshold {threshold:e}")]
    GateRefused { residual: f64, threshold: f64 },
    #[error("point ({q1}, {p1}, {q2}, {p2}) is off the kernel lattice; {hint}")]
    OffLattice { q1: f64, p1: f64, q2: f64, p2: f64, hint: String },
    #[error("an analytic kernel needs an explicit quadrature box")]
    MissingBox,
}

/// Parameters of `R = i sin(u v' + eps u' v) exp(-u^2/tau - v^2/sigma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianAlphaSpec {
    pub tau: f64,
    pub sigma: f64,
    pub epsilon: i8,
}

impl GaussianAlphaSpec {
    pub fn new(tau: f64, sigma: f64, epsilon: i8) -> Result<Self, FactorizeError> {
        let ok = tau > 0.0 && sigma > 0.0 && tau.is_finite() && sigma.is_finite() && epsilon.abs() == 1;
        ok.then_some(Self { tau, sigma, epsilon }).ok_or(FactorizeError::InvalidSpec)
    }

    pub fn r<T: Real>(&self, u: T, v: T, up: T, vp: T) -> Complex<T> {
        let eps = T::lit(self.epsilon as f64);
        let mag = (u * vp + eps * up * v).sin() * (-(u * u) / T::lit(self.tau) - v * v / T::lit(self.sigma)).exp();
        Complex::new(T::zero(), mag)
    }

    /// The kernel with its analytic closure attached.
    pub fn kernel<T: Real>(&self) -> AlphaKernel<T> {
        let spec = *self;
        AlphaKernel::analytic(Arc::new(move |q1, p1, q2, p2| spec.r(q2 - q1, p1 - p2, q2 + q1, p1 + p2)))
    }

    /// The observable the kernel comes from when `epsilon = +1`, in the gauge
    /// where it vanishes at infinity: `(pi/2) sqrt(sigma tau) exp(-sigma q^2 - tau p^2)`.
    pub fn expected_a(&self, q: f64, p: f64) -> f64 {
        0.5 * std::f64::consts::PI * (self.sigma * self.tau).sqrt() * (-self.sigma * q * q - self.tau * p * p).exp()
    }

    /// Truncation box for integrals whose extra oscillation frequency is at
    /// most `freq` in each variable.
    pub fn quadrature_box(&self, freq: f64) -> QuadratureBox {
        const DECAY: f64 = 37.0;
        let side = |w: f64| {
            let half = (DECAY * w).sqrt();
            let h = 2.0 * std::f64::consts::PI / (freq + (4.0 * DECAY / w).sqrt());
            let steps = (half / h).ceil() as usize;
            (half, steps)
        };
        let (lu, nu) = side(self.tau);
        let (lv, nv) = side(self.sigma);
        QuadratureBox { lu, lv, nu, nv }
    }

    /// A point where `A` is below `1e-17` of its peak.
    pub fn far_point(&self) -> (f64, f64) {
        ((40.0 / self.sigma).sqrt(), (40.0 / self.tau).sqrt())
    }
}

/// Trapezoid box `[-lu, lu] x [-lv, lv]` with `2 nu + 1` by `2 nv + 1` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureBox {
    pub lu: f64,
    pub lv: f64,
    pub nu: usize,
    pub nv: usize,
}

impl QuadratureBox {
    pub fn hu(&self) -> f64 {
        self.lu / self.nu as f64
    }
    pub fn hv(&self) -> f64 {
        self.lv / self.nv as f64
    }
}

/// Symmetric square lattice of `n` points per axis on `[-half_width, half_width]`,
/// shared by `q` and `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelAxes {
    pub n: usize,
    pub half_width: f64,
}

impl KernelAxes {
    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }
    pub fn point(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.step()
    }
    pub fn index(&self, t: f64) -> Option<usize> {
        let s = (t + self.half_width) / self.step();
        let r = s.round();
        ((s - r).abs() < 1e-9 && r >= 0.0 && (r as usize) < self.n).then_some(r as usize)
    }
}

pub type KernelFn<T> = Arc<dyn Fn(T, T, T, T) -> Complex<T> + Send + Sync>;

/// `alpha_K(q1,p1,q2,p2)` as a dense lattice array, an analytic closure, or both.
#[derive(Clone)]
pub struct AlphaKernel<T> {
    pub axes: Option<KernelAxes>,
    /// Index `((i1 n + k1) n + i2) n + k2` for `(q_i1, p_k1, q_i2, p_k2)`.
    pub entries: Option<Vec<Complex<T>>>,
    pub closure: Option<KernelFn<T>>,
}

impl<T> fmt::Debug for AlphaKernel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlphaKernel")
            .field("axes", &self.axes)
            .field("dense", &self.entries.is_some())
            .field("analytic", &self.closure.is_some())
            .finish()
    }
}

impl<T: Real> AlphaKernel<T> {
    pub fn analytic(f: KernelFn<T>) -> Self {
        Self { axes: None, entries: None, closure: Some(f) }
    }

    pub fn zero() -> Self {
        Self::analytic(Arc::new(|_, _, _, _| Complex::new(T::zero(), T::zero())))
    }

    /// Samples the closure onto `axes`, keeping the closure.
    pub fn densify(&self, axes: KernelAxes) -> Self {
        let f = self.closure.as_ref().expect("densify needs a closure");
        let n = axes.n;
        let pt = |i: usize| T::lit(axes.point(i));
        let entries: Vec<Complex<T>> = (0..n * n * n * n)
            .into_par_iter()
            .map(|idx| {
                let (i1, k1, i2, k2) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
                f(pt(i1), pt(k1), pt(i2), pt(k2))
            })
            .collect();
        Self { axes: Some(axes), entries: Some(entries), closure: self.closure.clone() }
    }

    pub fn eval(&self, q1: T, p1: T, q2: T, p2: T) -> Result<Complex<T>, FactorizeError> {
        if let Some(f) = &self.closure {
            return Ok(f(q1, p1, q2, p2));
        }
        let axes = self.axes.expect("kernel without closure carries axes");
        let entries = self.entries.as_ref().expect("kernel without closure carries entries");
        let idx = |t: T| axes.index(t.as_f64());
        match (idx(q1), idx(p1), idx(q2), idx(p2)) {
            (Some(i1), Some(k1), Some(i2), Some(k2)) => {
                let n = axes.n;
                Ok(entries[((i1 * n + k1) * n + i2) * n + k2])
            }
            _ => Err(FactorizeError::OffLattice {
                q1: q1.as_f64(),
                p1: p1.as_f64(),
                q2: q2.as_f64(),
                p2: p2.as_f64(),
                hint: format!(
                    "lattice step is {:.6} on [-{}, {}]; choose points on it or supply an analytic kernel",
                    axes.step(),
                    axes.half_width,
                    axes.half_width
                ),
            }),
        }
    }

    /// Largest violation of `conj(a(1,2)) = a(2,1) = -a(1,2)` on the lattice.
    pub fn constraint_defect(&self) -> T {
        let (Some(axes), Some(e)) = (self.axes, self.entries.as_ref()) else {
            return T::zero();
        };
        let n = axes.n;
        let mut m = T::zero();
        for i1 in 0..n {
            for k1 in 0..n {
                for i2 in 0..n {
                    for k2 in 0..n {
                        let a = e[((i1 * n + k1) * n + i2) * n + k2];
                        let b = e[((i2 * n + k2) * n + i1) * n + k1];
                        m = m.max((a.conj() - b).norm()).max((b + a).norm());
                    }
                }
            }
        }
        m
    }
}

/// Dense kernel of `alpha B = i{A, B}`:
/// `alpha_K(1,2) = -(2i/pi^2) int A(3) sin 2[q3(p1-p2) + p3(q2-q1) + p2 q1 - p1 q2] d3`,
/// summed over the cells of `a`.
pub fn alpha_kernel_from_a<T: Real>(a: &PhaseFunction<T>, axes: KernelAxes) -> AlphaKernel<T> {
    let g = a.grid;
    let n = axes.n;
    let rows = 2 * g.n();
    let h = axes.step();
    let two = T::lit(2.0);
    // F(a, b) = sum A(q, p) exp(2i(q a + p b)) cell, a and b on the difference lattice
    let diffs = 2 * n - 1;
    let dval = |d: usize| T::lit((d as f64 - (n - 1) as f64) * h);
    let mut gtab = Array2::from_elem((rows, diffs), Complex::new(T::zero(), T::zero()));
    gtab.axis_iter_mut(ndarray::Axis(0)).into_par_iter().enumerate().for_each(|(c, mut row)| {
        for (bi, slot) in row.iter_mut().enumerate() {
            let b = dval(bi);
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..g.n() {
                acc = acc + a.entries[[c, k]] * Complex::from_polar(T::one(), two * g.p(k) * b);
            }
            *slot = acc;
        }
    });
    let cell = g.cell();
    let ftab: Vec<Complex<T>> = (0..diffs * diffs)
        .into_par_iter()
        .map(|idx| {
            let (ai, bi) = (idx / diffs, idx % diffs);
            let av = dval(ai);
            let mut acc = Complex::new(T::zero(), T::zero());
            for c in 0..rows {
                acc = acc + gtab[[c, bi]] * Complex::from_polar(T::one(), two * g.q(c) * av);
            }
            acc * cell
        })
        .collect();
    let pref = two / (T::PI() * T::PI());
    let pt = |i: usize| T::lit(axes.point(i));
    let entries: Vec<Complex<T>> = (0..n * n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (i1, k1, i2, k2) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
            let (q1, p1, q2, p2) = (pt(i1), pt(k1), pt(i2), pt(k2));
            // a = p1 - p2 -> index k1 - k2 + n - 1, b = q2 - q1 -> index i2 - i1 + n - 1
            let f = ftab[(k1 + n - 1 - k2) * diffs + (i2 + n - 1 - i1)];
            let im = (f * Complex::from_polar(T::one(), two * (p2 * q1 - p1 * q2))).im;
            Complex::new(T::zero(), -pref * im)
        })
        .collect();
    AlphaKernel { axes: Some(axes), entries: Some(entries), closure: None }
}

/// Single value of the kernel generated by `a`, by direct summation.
pub fn alpha_kernel_value<T: Real>(a: &PhaseFunction<T>, q1: T, p1: T, q2: T, p2: T) -> Complex<T> {
    let g = a.grid;
    let two = T::lit(2.0);
    let mut acc = T::zero();
    for c in 0..2 * g.n() {
        let q3 = g.q(c);
        for k in 0..g.n() {
            let e = q3 * (p1 - p2) + g.p(k) * (q2 - q1) + p2 * q1 - p1 * q2;
            acc = acc + a.entries[[c, k]].re * (two * e).sin();
        }
    }
    Complex::new(T::zero(), -two / (T::PI() * T::PI()) * acc * g.cell())
}

/// `R(u,v,u',v') = alpha_K((u'-u)/2, (v'+v)/2, (u'+u)/2, (v'-v)/2)`.
#[derive(Debug, Clone)]
pub struct RFunction<T> {
    pub kernel: AlphaKernel<T>,
    pub quadrature: Option<QuadratureBox>,
}

pub fn kernel_to_r<T: Real>(alpha: &AlphaKernel<T>) -> RFunction<T> {
    RFunction { kernel: alpha.clone(), quadrature: None }
}

impl<T: Real> RFunction<T> {
    pub fn with_box(mut self, b: QuadratureBox) -> Self {
        self.quadrature = Some(b);
        self
    }

    pub fn eval(&self, u: T, v: T, up: T, vp: T) -> Result<Complex<T>, FactorizeError> {
        let two = T::lit(2.0);
        self.kernel.eval((up - u) / two, (vp + v) / two, (up + u) / two, (vp - v) / two)
    }

    /// `int sin(v s1 + u s2) R(u, v, u', v') du dv`.
    pub fn sine_integral(&self, s1: T, s2: T, up: T, vp: T) -> Result<Complex<T>, FactorizeError> {
        let mut acc = Complex::new(T::zero(), T::zero());
        if self.kernel.closure.is_some() {
            let b = self.quadrature.ok_or(FactorizeError::MissingBox)?;
            let (hu, hv) = (T::lit(b.hu()), T::lit(b.hv()));
            for iu in -(b.nu as isize)..=(b.nu as isize) {
                let u = T::from_isize_lossy(iu) * hu;
                let wu = if iu.unsigned_abs() == b.nu { T::lit(0.5) } else { T::one() };
                for iv in -(b.nv as isize)..=(b.nv as isize) {
                    let v = T::from_isize_lossy(iv) * hv;
                    let wv = if iv.unsigned_abs() == b.nv { T::lit(0.5) } else { T::one() };
                    acc = acc + self.eval(u, v, up, vp)? * ((v * s1 + u * s2).sin() * wu * wv);
                }
            }
            return Ok(acc * hu * hv);
        }
        // dense data: sum over lattice pairs with q1 + q2 = u', p1 + p2 = v'
        let axes = self.kernel.axes.expect("dense kernel has axes");
        let n = axes.n;
        let h = T::lit(axes.step());
        let two = T::lit(2.0);
        let mut hit = false;
        for i1 in 0..n {
            let q1 = T::lit(axes.point(i1));
            let q2 = up - q1;
            if axes.index(q2.as_f64()).is_none() {
                continue;
            }
            for k1 in 0..n {
                let p1 = T::lit(axes.point(k1));
                let p2 = vp - p1;
                if axes.index(p2.as_f64()).is_none() {
                    continue;
                }
                hit = true;
                let (u, v) = (q2 - q1, p1 - p2);
                acc = acc + self.kernel.eval(q1, p1, q2, p2)? * (v * s1 + u * s2).sin();
            }
        }
        if !hit {
            return Err(FactorizeError::OffLattice {
                q1: up.as_f64(),
                p1: vp.as_f64(),
                q2: 0.0,
                p2: 0.0,
                hint: format!("(u', v') must be a sum of two lattice points of step {}", axes.step()),
            });
        }
        Ok(acc * (two * h) * (two * h))
    }
}

/// Probe points `(x, y, u', v')` on a regular lattice of `[-half_width, half_width]^4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeLattice {
    pub per_axis: usize,
    pub half_width: f64,
}

impl Default for ProbeLattice {
    fn default() -> Self {
        Self { per_axis: 5, half_width: 2.0 }
    }
}

impl ProbeLattice {
    pub fn values(&self) -> Vec<f64> {
        if self.per_axis == 1 {
            return vec![0.0];
        }
        let h = 2.0 * self.half_width / (self.per_axis - 1) as f64;
        (0..self.per_axis).map(|i| -self.half_width + i as f64 * h).collect()
    }

    pub fn points(&self) -> Vec<[f64; 4]> {
        let v = self.values();
        let mut out = Vec::with_capacity(v.len().pow(4));
        for &a in &v {
            for &b in &v {
                for &c in &v {
                    for &d in &v {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        out
    }
}

/// Maximum over the probes of
/// `|J(x,y,u',v') - J(x+,y+,x+,y+) + J(x-,y-,x-,y-)|` with
/// `J(s1,s2,u',v') = int sin(v s1 + u s2) R(u,v,u',v') du dv`.
/// Probes are evaluated in parallel, each integral serially.
pub fn autv_residual<T: Real>(r: &RFunction<T>, probes: &ProbeLattice) -> Result<T, FactorizeError> {
    let two = T::lit(2.0);
    let vals: Result<Vec<T>, FactorizeError> = probes
        .points()
        .into_par_iter()
        .map(|[x, y, up, vp]| {
            let (x, y, up, vp) = (T::lit(x), T::lit(y), T::lit(up), T::lit(vp));
            let lhs = r.sine_integral(x, y, up, vp)?;
            let (xp, yp) = ((up + x) / two, (vp + y) / two);
            let (xm, ym) = ((up - x) / two, (vp - y) / two);
            let rhs = r.sine_integral(xp, yp, xp, yp)? - r.sine_integral(xm, ym, xm, ym)?;
            Ok((lhs - rhs).norm())
        })
        .collect();
    Ok(vals?.into_iter().fold(T::zero(), |m, v| m.max(v)))
}

/// How the free additive constant of `A` is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gauge {
    /// `A(0, 0) = a`.
    Origin,
    /// `A(x0, y0) = a`; with a point far outside the support this is the
    /// gauge in which `A - a` vanishes at infinity.
    Point(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecoverOptions {
    pub threshold: f64,
    pub override_gate: bool,
    pub gauge: Gauge,
    pub probes: ProbeLattice,
}

impl Default for RecoverOptions {
    fn default() -> Self {
        Self { threshold: 1e-6, override_gate: false, gauge: Gauge::Origin, probes: ProbeLattice::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Recovered<T> {
    pub a: PhaseFunction<T>,
    pub residual: T,
    pub admitted: bool,
    /// Largest imaginary part discarded from the reconstruction.
    pub max_imag: T,
}

/// `A(x, y) = a + i int sin(vx + uy) R(u, v, x, y) du dv`, shifted to the
/// requested gauge, sampled on `grid`.
pub fn recover_a<T: Real>(
    r: &RFunction<T>,
    a: T,
    grid: &GridSpec<T>,
    opts: &RecoverOptions,
) -> Result<Recovered<T>, FactorizeError> {
    let residual = autv_residual(r, &opts.probes)?;
    let admitted = residual.as_f64() <= opts.threshold;
    if !admitted && !opts.override_gate {
        return Err(FactorizeError::GateRefused { residual: residual.as_f64(), threshold: opts.threshold });
    }
    let n = grid.n();
    let pts: Vec<(T, T)> = (0..2 * n).flat_map(|c| (0..n).map(move |k| (c, k))).map(|(c, k)| (grid.q(c), grid.p(k))).collect();
    let (vals, max_imag) = recover_at(r, a, &pts, opts.gauge)?;
    let entries = Array2::from_shape_fn((2 * n, n), |(c, k)| Complex::new(vals[c * n + k], T::zero()));
    Ok(Recovered { a: PhaseFunction::new(*grid, entries).expect("shape"), residual, admitted, max_imag })
}

/// The reconstruction at arbitrary points, without the admissibility gate.
pub fn recover_at<T: Real>(
    r: &RFunction<T>,
    a: T,
    points: &[(T, T)],
    gauge: Gauge,
) -> Result<(Vec<T>, T), FactorizeError> {
    let i = Complex::new(T::zero(), T::one());
    let raw = |x: T, y: T| r.sine_integral(x, y, x, y).map(|j| j * i);
    let offset = match gauge {
        Gauge::Origin => Complex::new(T::zero(), T::zero()),
        Gauge::Point(x0, y0) => raw(T::lit(x0), T::lit(y0))?,
    };
    let vals: Result<Vec<Complex<T>>, FactorizeError> =
        points.par_iter().map(|&(x, y)| raw(x, y).map(|z| z - offset)).collect();
    let vals = vals?;
    let max_imag = vals.iter().fold(T::zero(), |m, z| m.max(z.im.abs()));
    Ok((vals.into_iter().map(|z| a + z.re).collect(), max_imag))
}

/// Largest mismatch between `kernel` and the kernel generated by `a`, over
/// the points `(q1,p1,q2,p2)` of `probes`.
pub fn xi_consistency<T: Real>(a: &PhaseFunction<T>, kernel: &AlphaKernel<T>, probes: &ProbeLattice) -> Result<T, FactorizeError> {
    let vals: Result<Vec<T>, FactorizeError> = probes
        .points()
        .into_par_iter()
        .map(|[q1, p1, q2, p2]| {
            let (q1, p1, q2, p2) = (T::lit(q1), T::lit(p1), T::lit(q2), T::lit(p2));
            let want = kernel.eval(q1, p1, q2, p2)?;
            Ok((alpha_kernel_value(a, q1, p1, q2, p2) - want).norm())
        })
        .collect();
    Ok(vals?.into_iter().fold(T::zero(), |m, v| m.max(v)))
}
