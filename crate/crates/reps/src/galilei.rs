//! The Galilei group in one dimension: time translation `a1`, boost `a2`,
//! space translation `a3`.

use ndarray::Array2;
use num_complex::{Complex, Complex64};
use num_traits::{ToPrimitive, Zero};
use phasespace::{make_grid, wigner_of_state, z_inv, PhaseFunction, Real, StateVector};
use phasespace_symbolic::coeff;
use phasespace_symbolic::{hilbert_generator, BigRational, Cq, Generator, LineOp};

use crate::error::RepsError;
use crate::report::{FactorizationResult, RelationCheck};
use crate::resample::{lattice_steps, shift_cols, shift_rows, spectral_shift_p, spectral_shift_q};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GalileiElement<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub m: T,
    pub hbar: T,
}

impl<T: Real> GalileiElement<T> {
    pub fn new(a1: T, a2: T, a3: T, m: T) -> Self {
        GalileiElement { a1, a2, a3, m, hbar: T::one() }
    }

    pub fn with_hbar(self, hbar: T) -> Self {
        GalileiElement { hbar, ..self }
    }

    pub fn identity(m: T) -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), m)
    }

    /// Product under which [`galilei_action`] is a homomorphism,
    /// `action(a, action(b, F)) = action(a.compose(b), F)`:
    /// `(a1 + b1, a2 + b2, a3 + b3 - b2 a1)`.
    pub fn compose(&self, b: &Self) -> Self {
        GalileiElement { a1: self.a1 + b.a1, a2: self.a2 + b.a2, a3: self.a3 + b.a3 - b.a2 * self.a1, ..*self }
    }

    /// The product with `+ b2 a1` in the third slot. Associative, but it
    /// does not match the composition of the point maps.
    pub fn compose_plus(&self, b: &Self) -> Self {
        GalileiElement { a1: self.a1 + b.a1, a2: self.a2 + b.a2, a3: self.a3 + b.a3 + b.a2 * self.a1, ..*self }
    }

    pub fn inverse(&self) -> Self {
        GalileiElement { a1: -self.a1, a2: -self.a2, a3: -self.a3 - self.a2 * self.a1, ..*self }
    }

    /// `(q, p) -> (q - (a1/m) p - a2 a1 - a3, p + m a2)`.
    pub fn point_map(&self, q: T, p: T) -> (T, T) {
        (q - self.a1 / self.m * p - self.a2 * self.a1 - self.a3, p + self.m * self.a2)
    }
}

/// Pullback `F(q - (a1/m) p - a2 a1 - a3, p + m a2)`.
///
/// The `p` shift runs first, then a per-column `q` shift. Shifts by whole
/// multiples of `dp` and `dx` are index permutations; anything else is
/// resampled spectrally.
pub fn galilei_action<T: Real>(g: &GalileiElement<T>, f: &PhaseFunction<T>) -> PhaseFunction<T> {
    let grid = f.grid;
    let mut out = f.clone();
    let dp_shift = g.m * g.a2;
    if dp_shift != T::zero() {
        out = match lattice_steps(dp_shift, grid.dp()) {
            Some(t) => shift_cols(&out, t),
            None => spectral_shift_p(&out, dp_shift),
        };
    }
    let c = g.a2 * g.a1 + g.a3;
    if g.a1 == T::zero() {
        if c != T::zero() {
            out = match lattice_steps(-c, grid.dx()) {
                Some(s) => shift_rows(&out, 2 * s),
                None => spectral_shift_q(&out, &vec![-c; grid.n()]),
            };
        }
    } else {
        let shifts: Vec<T> = (0..grid.n()).map(|k| -(g.a1 / g.m * grid.p(k) + c)).collect();
        out = spectral_shift_q(&out, &shifts);
    }
    out
}

/// `alpha_1 = -i (p/m) dq`, `alpha_2 = i m dp`, `alpha_3 = -i dq`.
pub fn galilei_generators(m: &BigRational) -> [Generator; 3] {
    let mc = Cq::new(m.clone(), BigRational::zero());
    [
        Generator::term(coeff::imag::<BigRational>(-1, 1) / mc.clone(), [0, 1, 1, 0]),
        Generator::term(coeff::imag::<BigRational>(1, 1) * mc, [0, 0, 0, 1]),
        Generator::term(coeff::imag::<BigRational>(-1, 1), [0, 0, 1, 0]),
    ]
}

/// Analytic test function `exp(-a q^2 - b p^2 - 2c q p + d q + e p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSymbol {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl Default for GaussianSymbol {
    fn default() -> Self {
        GaussianSymbol { a: 1.0, b: 0.7, c: 0.2, d: 0.3, e: -0.4 }
    }
}

impl GaussianSymbol {
    pub fn eval(&self, q: f64, p: f64) -> f64 {
        (-self.a * q * q - self.b * p * p - 2.0 * self.c * q * p + self.d * q + self.e * p).exp()
    }

    /// `int F(q, (r+s)/2) exp(-i q (r-s)/hbar) dq` in closed form.
    pub fn momentum_kernel(&self, r: f64, s: f64, hbar: f64) -> Complex64 {
        let pm = 0.5 * (r + s);
        let big_b = Complex64::new(-2.0 * self.c * pm + self.d, -(r - s) / hbar);
        let pre = (std::f64::consts::PI / self.a).sqrt() * (-self.b * pm * pm + self.e * pm).exp();
        pre * (big_b * big_b / (4.0 * self.a)).exp()
    }
}

/// Momentum-space form of the action on a kernel:
/// `exp(-i a1 (r^2 - s^2)/(2 m hbar) - i (a2 a1 + a3)(r - s)/hbar) K(r + m a2, s + m a2)`.
pub fn galilei_momentum_kernel(g: &GalileiElement<f64>, k: impl Fn(f64, f64) -> Complex64, r: f64, s: f64) -> Complex64 {
    let c = g.a2 * g.a1 + g.a3;
    let phase = -g.a1 * (r * r - s * s) / (2.0 * g.m * g.hbar) - c * (r - s) / g.hbar;
    Complex64::from_polar(1.0, phase) * k(r + g.m * g.a2, s + g.m * g.a2)
}

/// Compares the momentum-space formula with direct quadrature of the
/// transformed phase function, on a 7x7 patch of `(r, s)`.
pub fn galilei_momentum_residual(g: &GalileiElement<f64>, f: &GaussianSymbol) -> f64 {
    let h = 0.01;
    let mut worst: f64 = 0.0;
    for i in -3..=3 {
        for j in -3..=3 {
            let (r, s) = (0.5 * i as f64, 0.5 * j as f64);
            let pm = 0.5 * (r + s);
            let centre = g.a1 / g.m * pm + g.a2 * g.a1 + g.a3;
            let half = 12.0 + centre.abs();
            let steps = (2.0 * half / h).ceil() as i64;
            let mut acc = Complex64::zero();
            for t in 0..=steps {
                let q = -half + t as f64 * h;
                let w = if t == 0 || t == steps { 0.5 } else { 1.0 };
                let (qq, pp) = g.point_map(q, pm);
                acc += Complex64::from_polar(w * h * f.eval(qq, pp), -q * (r - s) / g.hbar);
            }
            let rhs = galilei_momentum_kernel(g, |x, y| f.momentum_kernel(x, y, g.hbar), r, s);
            worst = worst.max((acc - rhs).norm() / rhs.norm().max(1e-3));
        }
    }
    worst
}

/// Freely evolved Gaussian `pi^(-1/4) exp(-(x - x0)^2/2 + i k0 x)` at time `t`.
pub fn free_gaussian(x: f64, t: f64, m: f64, hbar: f64, x0: f64, k0: f64) -> Complex64 {
    let pi4 = std::f64::consts::PI.powf(-0.25);
    if t == 0.0 {
        return Complex64::from_polar(pi4 * (-(x - x0).powi(2) / 2.0).exp(), k0 * x);
    }
    let i = Complex64::i();
    let a = 0.5 - i * m / (2.0 * hbar * t);
    let b = x0 + i * k0 - i * m * x / (hbar * t);
    let c = -x0 * x0 / 2.0 + i * m * x * x / (2.0 * hbar * t);
    pi4 / (1.0 + i * hbar * t / m).sqrt() * (b * b / (4.0 * a) + c).exp()
}

/// Pushes the Wigner function of a Gaussian through `g(t, 0, 0)` on an
/// `n`-point grid, maps back with `z_inv`, and compares `2 pi K` with the
/// freely evolved density matrix.
pub fn free_evolution_residual(n: usize, dx: f64, m: f64, t: f64, x0: f64, k0: f64) -> Result<f64, RepsError> {
    let grid = make_grid(n, dx)?;
    let psi0 = StateVector::from_fn(grid, |x| free_gaussian(x, 0.0, m, 1.0, x0, k0));
    let w = wigner_of_state(&psi0);
    let k = z_inv(&galilei_action(&GalileiElement::new(t, 0.0, 0.0, m), &w));
    let psi: Vec<Complex64> = (0..n).map(|j| free_gaussian(grid.x(j), t, m, 1.0, x0, k0)).collect();
    let exact = Array2::from_shape_fn((n, n), |(i, j)| psi[i] * psi[j].conj());
    let two_pi = Complex::new(2.0 * std::f64::consts::PI, 0.0);
    Ok(k.iter().zip(exact.iter()).map(|(a, b)| (a * two_pi - b).norm()).fold(0.0, f64::max))
}

/// `H = -(hbar^2/2m) dx^2`, `K = m x`, `p = -i hbar dx`, with the phase-space
/// and Hilbert-space relations and the momentum-space action checked.
pub fn galilei_factorize(m: &BigRational, hbar: &BigRational) -> Result<FactorizationResult, RepsError> {
    if m <= &BigRational::zero() || hbar <= &BigRational::zero() {
        return Err(RepsError::Param("mass and hbar must be positive".into()));
    }
    let [a1, a2, a3] = galilei_generators(m);
    let h = Cq::new(hbar.clone(), BigRational::zero());
    let mc = Cq::new(m.clone(), BigRational::zero());
    let i = coeff::imag::<BigRational>(1, 1);
    let ham = hilbert_generator(&a1, hbar)?;
    let boost = hilbert_generator(&a2, hbar)?;
    let mom = hilbert_generator(&a3, hbar)?;
    let dx = LineOp::deriv(0);
    let mut relations = vec![
        RelationCheck::exact("[alpha1, alpha2] = -i alpha3", &a1.commutator(&a2), &a3.scale(&-i.clone())),
        RelationCheck::exact("[alpha2, alpha3] = 0", &a2.commutator(&a3), &Generator::zero()),
        RelationCheck::exact("[alpha1, alpha3] = 0", &a1.commutator(&a3), &Generator::zero()),
        RelationCheck::exact(
            "H = -(hbar^2/2m) dx^2",
            &ham,
            &dx.pow(2).scale(&(-(h.clone() * h.clone()) / (mc.clone() * coeff::int::<BigRational>(2)))),
        ),
        RelationCheck::exact("K = m x", &boost, &LineOp::var(0).scale(&mc)),
        RelationCheck::exact("p = -i hbar dx", &mom, &dx.scale(&(-i.clone() * h.clone()))),
        RelationCheck::exact("[H, K] = -i hbar p", &ham.commutator(&boost), &mom.scale(&(-i.clone() * h.clone()))),
        RelationCheck::exact("[H, p] = 0", &ham.commutator(&mom), &LineOp::zero()),
        RelationCheck::exact("[K, p] = i hbar m", &boost.commutator(&mom), &LineOp::scalar(i * h * mc)),
    ];
    let (mf, hf) = (m.to_f64().unwrap_or(f64::NAN), hbar.to_f64().unwrap_or(f64::NAN));
    let g = GalileiElement::new(0.6, -0.35, 0.4, mf).with_hbar(hf);
    relations.push(RelationCheck::numeric(
        "momentum-space action matches phase-space action",
        galilei_momentum_residual(&g, &GaussianSymbol::default()),
        1e-6,
    ));
    if hbar == &BigRational::from_integer(1.into()) {
        relations.push(RelationCheck::numeric(
            "free evolution of a Gaussian",
            free_evolution_residual(64, 0.25, mf, 0.8, 0.5, 0.7)?,
            1e-5,
        ));
    }
    Ok(FactorizationResult {
        example: "galilei".into(),
        hbar: hbar.clone(),
        phase_generators: vec![("alpha1".into(), a1), ("alpha2".into(), a2), ("alpha3".into(), a3)],
        hilbert_generators: vec![("H".into(), ham), ("K".into(), boost), ("p".into(), mom)],
        additive_constants: vec![("e0".into(), Cq::zero()), ("q0".into(), Cq::zero()), ("p0".into(), Cq::zero())],
        cocycle_phase: 0.0,
        relations,
        casimir: None,
    })
}
