//! Weyl symbols of polynomial operators and the terminating star product.
//!
//! Index convention: the symbol of the normal-ordered monomial `Q^a P^b` is
//! `sum_k (i/2)^k k! C(a,k) C(b,k) q^(a-k) p^(b-k)`, so powers of `Q` feed
//! powers of `q`. This is the placement forced by brute-force Weyl
//! symmetrization and by the inverse formula.


use crate::coeff::{self, Coefficient, Cx};
use crate::ncpoly::{Letter, NCPoly, NormalTerms};
use crate::symbol::PolySymbol;

/// `(+i/2)^k` for the symbol map, `(-i/2)^k` for its inverse.
fn half_i_pow<R: Coefficient>(k: u32, sign: i64) -> Cx<R> {
    let base = Cx::new(R::zero(), R::ratio(sign, 2));
    (0..k).fold(coeff::int(1), |acc, _| acc * base.clone())
}

fn contraction<R: Coefficient>(a: u32, b: u32, k: u32) -> R {
    coeff::factorial::<R>(k) * coeff::binomial::<R>(a, k) * coeff::binomial::<R>(b, k)
}

pub fn weyl_symbol<R: Coefficient>(x: &NCPoly<R>) -> PolySymbol<R> {
    let mut out = PolySymbol::zero();
    for ((a, b), c) in x.normal_terms() {
        for k in 0..=a.min(b) {
            let w = coeff::scale_real(&(half_i_pow::<R>(k, 1) * c.clone()), &contraction::<R>(a, b, k));
            out.add_term(w, a - k, b - k);
        }
    }
    out
}

/// Weyl (symmetric) quantization in normal order,
/// `q^m p^n -> sum_k (-i/2)^k k! C(m,k) C(n,k) Q^(m-k) P^(n-k)`.
pub fn weyl_quantize<R: Coefficient>(a: &PolySymbol<R>) -> NCPoly<R> {
    let mut out = NormalTerms::new();
    for (&(m, n), c) in a.terms() {
        for k in 0..=m.min(n) {
            let w = coeff::scale_real(&(half_i_pow::<R>(k, -1) * c.clone()), &contraction::<R>(m, n, k));
            crate::ncpoly::add_into(&mut out, (m - k, n - k), w);
        }
    }
    NCPoly::from_normal(&out)
}

/// The same quantization written as `2^-m sum_r C(m,r) Q^(m-r) P^n Q^r`;
/// the words are returned unnormalized.
pub fn weyl_quantize_symmetrized<R: Coefficient>(a: &PolySymbol<R>) -> NCPoly<R> {
    let mut out = NCPoly::zero();
    for (&(m, n), c) in a.terms() {
        let scale = R::one() / num_traits::pow(R::from_u32(2).unwrap(), m as usize);
        for r in 0..=m {
            let w = coeff::scale_real(c, &(coeff::binomial::<R>(m, r) * scale.clone()));
            let word: Vec<Letter> = std::iter::repeat_n(Letter::Q, (m - r) as usize)
                .chain(std::iter::repeat_n(Letter::P, n as usize))
                .chain(std::iter::repeat_n(Letter::Q, r as usize))
                .collect();
            out = &out + &NCPoly::word(w, word);
        }
    }
    out
}

/// `A J^j B` with `J = (1/2)(<dq ->dp - <dp ->dq)`.
pub fn j_power<R: Coefficient>(a: &PolySymbol<R>, b: &PolySymbol<R>, j: u32) -> PolySymbol<R> {
    let mut out = PolySymbol::zero();
    let scale = R::one() / num_traits::pow(R::from_u32(2).unwrap(), j as usize);
    for l in 0..=j {
        let mut w = coeff::binomial::<R>(j, l) * scale.clone();
        if l % 2 == 1 {
            w = -w;
        }
        let left = a.derivative(j - l, l);
        if left.is_zero() {
            continue;
        }
        let right = b.derivative(l, j - l);
        out = &out + &(&left * &right).scale(&Cx::new(w, R::zero()));
    }
    out
}

fn j_order<R: Coefficient>(a: &PolySymbol<R>, b: &PolySymbol<R>) -> u32 {
    a.degree().min(b.degree())
}

/// `A * B = sum_j (i^j / j!) A J^j B`.
pub fn star_symbolic<R: Coefficient>(a: &PolySymbol<R>, b: &PolySymbol<R>) -> PolySymbol<R> {
    let mut out = PolySymbol::zero();
    for j in 0..=j_order(a, b) {
        let w = coeff::i_pow::<R>(j) / Cx::new(coeff::factorial::<R>(j), R::zero());
        out = &out + &j_power(a, b, j).scale(&w);
    }
    out
}

/// The right-acting form `A * B = sum_j ((-i)^j / j!) B J^j A`.
pub fn star_symbolic_right<R: Coefficient>(a: &PolySymbol<R>, b: &PolySymbol<R>) -> PolySymbol<R> {
    let mut out = PolySymbol::zero();
    for j in 0..=j_order(a, b) {
        let w = coeff::i_pow::<R>(3 * j) / Cx::new(coeff::factorial::<R>(j), R::zero());
        out = &out + &j_power(b, a, j).scale(&w);
    }
    out
}

/// `{A, B} = 2 sum_{j odd} (-1)^((j-1)/2) / j! A J^j B`.
pub fn moyal_symbolic<R: Coefficient>(a: &PolySymbol<R>, b: &PolySymbol<R>) -> PolySymbol<R> {
    let mut out = PolySymbol::zero();
    for j in (1..=j_order(a, b)).step_by(2) {
        let mut w = R::from_u32(2).unwrap() / coeff::factorial::<R>(j);
        if (j / 2) % 2 == 1 {
            w = -w;
        }
        out = &out + &j_power(a, b, j).scale(&Cx::new(w, R::zero()));
    }
    out
}

/// `-i (A*B - B*A)`, the bracket computed through the star product.
pub fn moyal_via_star<R: Coefficient>(a: &PolySymbol<R>, b: &PolySymbol<R>) -> PolySymbol<R> {
    (&star_symbolic(a, b) - &star_symbolic(b, a)).scale(&coeff::imag(-1, 1))
}

