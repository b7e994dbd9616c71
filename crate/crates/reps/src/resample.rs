//! Shifts of phase functions along either axis.
//!
//! Integer shifts are index permutations. Fractional shifts interpolate each
//! line through its DFT; odd rows are antiperiodic in `p`, so they are
//! demodulated by half a bin first and remodulated afterwards.

use std::sync::Arc;

use ndarray::{Array2, Axis};
use num_complex::Complex;
use phasespace::{PhaseFunction, Real};
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

/// `Some(k)` when `v = k * step` up to rounding.
pub fn lattice_steps<T: Real>(v: T, step: T) -> Option<isize> {
    let t = v / step;
    let r = t.round();
    if (t - r).abs() <= T::lit(1e-9) * (T::one() + r.abs()) {
        r.to_isize()
    } else {
        None
    }
}

fn rebuild<T: Real>(f: &PhaseFunction<T>, entries: Array2<Complex<T>>) -> PhaseFunction<T> {
    PhaseFunction { grid: f.grid, entries, layout: f.layout }
}

/// `G(q_c, p) = F(q_{c+s}, p)`, cyclic over the `2n` rows.
pub fn shift_rows<T: Real>(f: &PhaseFunction<T>, s: isize) -> PhaseFunction<T> {
    let rows = f.entries.nrows() as isize;
    let e = &f.entries;
    let out = Array2::from_shape_fn(e.dim(), |(c, k)| e[[(c as isize + s).rem_euclid(rows) as usize, k]]);
    rebuild(f, out)
}

/// `G(q, p_k) = F(q, p_{k+t})`. Odd rows change sign on every wrap.
pub fn shift_cols<T: Real>(f: &PhaseFunction<T>, t: isize) -> PhaseFunction<T> {
    let n = f.entries.ncols() as isize;
    let e = &f.entries;
    let out = Array2::from_shape_fn(e.dim(), |(c, k)| {
        let j = k as isize + t;
        let v = e[[c, j.rem_euclid(n) as usize]];
        if c % 2 == 1 && j.div_euclid(n) % 2 != 0 {
            -v
        } else {
            v
        }
    });
    rebuild(f, out)
}

struct Shifter<T: Real> {
    len: usize,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
}

impl<T: Real> Shifter<T> {
    fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Shifter { len, fwd: planner.plan_fft_forward(len), inv: planner.plan_fft_inverse(len) }
    }

    /// Replaces `line[k]` by the trigonometric interpolant at `k + sigma`.
    /// With `twist`, the line is treated as antiperiodic.
    fn shift(&self, line: &mut [Complex<T>], sigma: T, twist: bool) {
        let len = self.len;
        let lf = T::from_usize_lossy(len);
        let half = |k: T| Complex::from_polar(T::one(), T::PI() * k / lf);
        if twist {
            for (k, v) in line.iter_mut().enumerate() {
                *v = *v * half(-T::from_usize_lossy(k));
            }
        }
        self.fwd.process(line);
        for (j, v) in line.iter_mut().enumerate() {
            let freq = if j < len / 2 { j as isize } else { j as isize - len as isize };
            let phase = T::lit(2.0) * T::PI() * T::from_isize_lossy(freq) * sigma / lf;
            *v = *v * Complex::from_polar(T::one() / lf, phase);
        }
        self.inv.process(line);
        if twist {
            for (k, v) in line.iter_mut().enumerate() {
                *v = *v * half(T::from_usize_lossy(k) + sigma);
            }
        }
    }
}

/// `G(q, p) = F(q, p + shift)` by band-limited interpolation along each row.
pub fn spectral_shift_p<T: Real>(f: &PhaseFunction<T>, shift: T) -> PhaseFunction<T> {
    let sigma = shift / f.grid.dp();
    let sh = Shifter::new(f.entries.ncols());
    let mut out = f.entries.clone();
    out.axis_iter_mut(Axis(0)).into_par_iter().enumerate().for_each(|(c, mut row)| {
        let mut buf: Vec<_> = row.iter().copied().collect();
        sh.shift(&mut buf, sigma, c % 2 == 1);
        row.iter_mut().zip(buf).for_each(|(o, v)| *o = v);
    });
    rebuild(f, out)
}

/// `G(q, p_k) = F(q + shifts[k], p_k)`, interpolating each column over the
/// `2n` rows with period `n dx`.
pub fn spectral_shift_q<T: Real>(f: &PhaseFunction<T>, shifts: &[T]) -> PhaseFunction<T> {
    assert_eq!(shifts.len(), f.entries.ncols(), "one shift per column");
    let dq = f.grid.dq();
    let sh = Shifter::new(f.entries.nrows());
    let mut out = f.entries.clone();
    out.axis_iter_mut(Axis(1)).into_par_iter().enumerate().for_each(|(k, mut col)| {
        let mut buf: Vec<_> = col.iter().copied().collect();
        sh.shift(&mut buf, shifts[k] / dq, false);
        col.iter_mut().zip(buf).for_each(|(o, v)| *o = v);
    });
    rebuild(f, out)
}
