//! Heisenberg-Weyl translations and the generalised tower of generators.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use phasespace::{PhaseFunction, Real};
use phasespace_symbolic::coeff::{self, binomial, factorial};
use phasespace_symbolic::{
    hilbert_generator, moyal_symbolic, read_off_generator, BigRational, Cq, Generator, LineOp, Symbol,
};

use crate::error::RepsError;
use crate::report::{FactorizationResult, RelationCheck};
use crate::resample::{lattice_steps, shift_cols, shift_rows};

/// Translation by `a1` in `q` and `a2` in `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HWElement<T> {
    pub a1: T,
    pub a2: T,
    pub hbar: T,
}

impl<T: Real> HWElement<T> {
    pub fn new(a1: T, a2: T) -> Self {
        HWElement { a1, a2, hbar: T::one() }
    }

    pub fn with_hbar(self, hbar: T) -> Self {
        HWElement { hbar, ..self }
    }

    pub fn identity() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn compose(&self, other: &Self) -> Self {
        HWElement { a1: self.a1 + other.a1, a2: self.a2 + other.a2, hbar: self.hbar }
    }

    pub fn inverse(&self) -> Self {
        HWElement { a1: -self.a1, a2: -self.a2, hbar: self.hbar }
    }
}

/// `F(q + a1, p - a2)` as an index shift.
///
/// `a1` must be a multiple of `dx` (two rows) and `a2` a multiple of `dp`.
/// A half step `dx/2` in `q` would carry even rows onto odd ones and has
/// no counterpart on the `x` lattice.
pub fn hw_action<T: Real>(g: &HWElement<T>, f: &PhaseFunction<T>) -> Result<PhaseFunction<T>, RepsError> {
    let (dx, dp) = (f.grid.dx(), f.grid.dp());
    let s = lattice_steps(g.a1, dx).ok_or(RepsError::OffLattice { axis: "q", value: g.a1.as_f64(), step: dx.as_f64() })?;
    let t = lattice_steps(-g.a2, dp).ok_or(RepsError::OffLattice { axis: "p", value: g.a2.as_f64(), step: dp.as_f64() })?;
    Ok(shift_cols(&shift_rows(f, 2 * s), t))
}

/// `alpha_1 = -i dq`, `alpha_2 = i dp`.
pub fn hw_generators() -> [Generator; 2] {
    [Generator::term(coeff::imag::<BigRational>(-1, 1), [0, 0, 1, 0]), Generator::term(coeff::imag::<BigRational>(1, 1), [0, 0, 0, 1])]
}

/// The Hilbert-space action `(U(a) u)(x) = exp(i a2 x / hbar) u(x + a1)`.
pub fn hw_hilbert_action<'a>(g: HWElement<f64>, u: impl Fn(f64) -> Complex64 + 'a) -> impl Fn(f64) -> Complex64 + 'a {
    move |x| Complex64::from_polar(1.0, g.a2 * x / g.hbar) * u(x + g.a1)
}

/// `U(a) U(b) = exp(i omega(a, b)) U(a b)` with `omega(a, b) = a1 b2 / hbar`.
pub fn hw_cocycle(a: &HWElement<f64>, b: &HWElement<f64>) -> f64 {
    a.a1 * b.a2 / a.hbar
}

/// Largest deviation of `U(a) U(b) u` from `exp(i omega) U(ab) u` over `xs`.
pub fn hw_cocycle_residual(a: HWElement<f64>, b: HWElement<f64>, u: impl Fn(f64) -> Complex64 + Copy, xs: &[f64]) -> f64 {
    let lhs = hw_hilbert_action(a, hw_hilbert_action(b, u));
    let rhs = hw_hilbert_action(a.compose(&b), u);
    let phase = Complex64::from_polar(1.0, hw_cocycle(&a, &b));
    xs.iter().map(|&x| (lhs(x) - phase * rhs(x)).norm()).fold(0.0, f64::max)
}

fn gaussian(x: f64) -> Complex64 {
    Complex64::new((-x * x / 2.0).exp() * std::f64::consts::PI.powf(-0.25), 0.0)
}

fn scalar(c: Cq) -> LineOp {
    LineOp::scalar(c)
}

fn hbar_cx(hbar: &BigRational) -> Cq {
    Cq::new(hbar.clone(), BigRational::zero())
}

/// `A_1 = p = -i hbar dx`, `A_2 = q = x`, with `[q, p] = i hbar`.
pub fn hw_factorize(hbar: &BigRational) -> Result<FactorizationResult, RepsError> {
    let [a1, a2] = hw_generators();
    let h = hbar_cx(hbar);
    let p_hat = hilbert_generator(&a1, hbar)?;
    let q_hat = hilbert_generator(&a2, hbar)?;
    let comm = q_hat.commutator(&p_hat);
    let mut relations = vec![
        RelationCheck::exact("[alpha1, alpha2] = 0", &a1.commutator(&a2), &Generator::zero()),
        RelationCheck::exact("A1 = -i hbar dx", &p_hat, &LineOp::deriv(0).scale(&(coeff::imag::<BigRational>(-1, 1) * h.clone()))),
        RelationCheck::exact("A2 = x", &q_hat, &LineOp::var(0)),
        RelationCheck::exact("[q, p] = i hbar", &comm, &scalar(coeff::imag::<BigRational>(1, 1) * h)),
        RelationCheck::flag("[A2, A1] != 0", !comm.is_zero()),
    ];
    let hf = hbar.to_f64().unwrap_or(f64::NAN);
    let (ga, gb) = (HWElement::new(0.7, -0.4).with_hbar(hf), HWElement::new(0.3, 1.1).with_hbar(hf));
    let xs: Vec<f64> = (-40..=40).map(|k| k as f64 * 0.1).collect();
    relations.push(RelationCheck::numeric("U(a)U(b) = exp(i a1 b2/hbar) U(a+b)", hw_cocycle_residual(ga, gb, gaussian, &xs), 1e-12));
    relations.push(RelationCheck::flag("cocycle nonzero for noncommuting pair", hw_cocycle(&ga, &gb).abs() > 0.0));
    Ok(FactorizationResult {
        example: "heisenberg-weyl".into(),
        hbar: hbar.clone(),
        phase_generators: vec![("alpha1".into(), a1), ("alpha2".into(), a2)],
        hilbert_generators: vec![("A1".into(), p_hat), ("A2".into(), q_hat)],
        additive_constants: vec![("p0".into(), Cq::zero()), ("q0".into(), Cq::zero())],
        cocycle_phase: 0.0,
        relations,
        casimir: None,
    })
}

/// One level of the generalised Heisenberg tower.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerLevel {
    pub n: u32,
    pub beta: Generator,
    /// Observable behind `beta`, constant dropped.
    pub symbol: Symbol,
    /// Coordinate-picture operator, `x^n / n!` when the tower is consistent.
    pub hilbert: LineOp,
}

/// `beta_n = (2/n!) sum_{n-m odd} (i/2)^(n-m) C(n,m) q^m dp^(n-m)`.
pub fn tower_beta(n: u32) -> Generator {
    let mut out = Generator::zero();
    let two = BigRational::from_integer(2.into());
    for m in (0..n).rev().step_by(2) {
        let k = n - m;
        let w = &two * binomial::<BigRational>(n, m) / factorial::<BigRational>(n);
        let c = coeff::i_pow::<BigRational>(k) * Cq::new(w / two.pow(k as i32), BigRational::zero());
        out.add_term([m, 0, 0, k], c);
    }
    out
}

/// Levels `1..=depth` of the tower; `depth` is limited to `1..=8`.
pub fn gen_heisenberg_tower(depth: u32) -> Result<Vec<TowerLevel>, RepsError> {
    if !(1..=8).contains(&depth) {
        return Err(RepsError::Param(format!("tower depth {depth} outside 1..=8")));
    }
    let one = BigRational::from_integer(1.into());
    (1..=depth)
        .map(|n| {
            let beta = tower_beta(n);
            Ok(TowerLevel { n, symbol: read_off_generator(&beta)?, hilbert: hilbert_generator(&beta, &one)?, beta })
        })
        .collect()
}

/// Exact checks for each level: the operator is `x^n/n!`, the symbol is
/// `q^n/n!`, and `[-i dq, beta_n] = -i beta_(n-1)` agrees with
/// `{p, q^n/n!} = -q^(n-1)/(n-1)!`.
pub fn tower_checks(levels: &[TowerLevel]) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    let d = hw_generators()[0].clone();
    for lv in levels {
        let n = lv.n;
        let inv_fact = Cq::new(factorial::<BigRational>(n).recip(), BigRational::zero());
        let expect_sym = Symbol::monomial(n, 0).scale(&inv_fact);
        out.push(RelationCheck::exact(
            format!("B{n} = x^{n}/{n}!"),
            &lv.hilbert,
            &LineOp::var(0).pow(n).scale(&inv_fact),
        ));
        out.push(RelationCheck::flag(format!("symbol of beta{n} = q^{n}/{n}!"), lv.symbol == expect_sym));
        let prev = if n > 1 { tower_beta(n - 1) } else { Generator::zero() };
        out.push(RelationCheck::exact(
            format!("[-i dq, beta{n}] = -i beta{}", n - 1),
            &d.commutator(&lv.beta),
            &prev.scale(&coeff::imag::<BigRational>(-1, 1)),
        ));
        let bracket = moyal_symbolic(&Symbol::p(), &expect_sym);
        let expect_bracket =
            Symbol::monomial(n - 1, 0).scale(&Cq::new(-factorial::<BigRational>(n - 1).recip(), BigRational::zero()));
        out.push(RelationCheck::flag(
            format!("{{p, q^{n}/{n}!}} = -q^{}/{}!", n - 1, n - 1),
            bracket == expect_bracket,
        ));
    }
    out
}
