//! Polynomials in the canonical operators `Q` and `P` with `QP - PQ = i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{self, Coefficient, Cx};
use crate::symbol::by_value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Q,
    P,
}

/// Normal-ordered terms: `(a, b) -> c` stands for `c Q^a P^b`.
pub type NormalTerms<R> = BTreeMap<(u32, u32), Cx<R>>;

/// A linear combination of words in `Q` and `P`.
///
/// Words are kept as written until [`NCPoly::normalize`] brings them to the
/// canonical normal order (every `Q` left of every `P`). Two polynomials
/// represent the same operator iff their normal forms are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct NCPoly<R: Coefficient = BigRational> {
    terms: Vec<(Cx<R>, Vec<Letter>)>,
}

impl<R: Coefficient> Default for NCPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient> NCPoly<R> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn scalar(c: Cx<R>) -> Self {
        Self::word(c, Vec::new())
    }

    pub fn one() -> Self {
        Self::scalar(coeff::int(1))
    }

    pub fn q() -> Self {
        Self::word(coeff::int(1), vec![Letter::Q])
    }

    pub fn p() -> Self {
        Self::word(coeff::int(1), vec![Letter::P])
    }

    pub fn word(c: Cx<R>, letters: Vec<Letter>) -> Self {
        if coeff::is_zero(&c) {
            return Self::zero();
        }
        Self { terms: vec![(c, letters)] }
    }

    /// `Q^a P^b`.
    pub fn monomial(a: u32, b: u32) -> Self {
        Self::word(coeff::int(1), normal_word(a, b))
    }

    pub fn from_normal(map: &NormalTerms<R>) -> Self {
        Self { terms: map.iter().map(|(&(a, b), c)| (c.clone(), normal_word(a, b))).collect() }
    }

    pub fn terms(&self) -> &[(Cx<R>, Vec<Letter>)] {
        &self.terms
    }

    /// Normal-ordered coefficients, obtained by pushing every `Q` to the
    /// left one swap at a time with `PQ = QP - i`.
    pub fn normal_terms(&self) -> NormalTerms<R> {
        let mut out = NormalTerms::new();
        for (c, w) in &self.terms {
            let mut acc: NormalTerms<R> = NormalTerms::new();
            acc.insert((0, 0), c.clone());
            for l in w {
                acc = right_letter(&acc, *l);
            }
            merge(&mut out, &acc);
        }
        out
    }

    /// Canonical form; idempotent.
    pub fn normalize(&self) -> Self {
        Self::from_normal(&self.normal_terms())
    }

    pub fn is_normal(&self) -> bool {
        *self == self.normalize()
    }

    pub fn is_zero(&self) -> bool {
        self.normal_terms().is_empty()
    }

    /// Equality as operators.
    pub fn same_operator(&self, other: &Self) -> bool {
        self.normal_terms() == other.normal_terms()
    }

    pub fn scale(&self, s: &Cx<R>) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.clone() * s.clone(), w.clone()))
                .filter(|(c, _)| !coeff::is_zero(c))
                .collect(),
        }
    }

    /// Largest word length among the normal-ordered terms.
    pub fn degree(&self) -> u32 {
        self.normal_terms().keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| (&acc * self).normalize())
    }

    /// `[self, other]` in normal order.
    pub fn commutator(&self, other: &Self) -> Self {
        let ab = nmul(&self.normal_terms(), &other.normal_terms());
        let ba = nmul(&other.normal_terms(), &self.normal_terms());
        let mut out = ab;
        for (k, c) in ba {
            add_into(&mut out, k, -c);
        }
        Self::from_normal(&out)
    }

    /// Formal adjoint: conjugate coefficients and reverse every word.
    pub fn adjoint(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.conj(), w.iter().rev().copied().collect()))
                .collect(),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.same_operator(&self.adjoint())
    }

    /// The automorphism `Q -> P`, `P -> -Q`.
    pub fn swap(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| {
                    let flips = w.iter().filter(|l| **l == Letter::P).count();
                    let c = if flips % 2 == 1 { -c.clone() } else { c.clone() };
                    let w = w.iter().map(|l| if *l == Letter::Q { Letter::P } else { Letter::Q }).collect();
                    (c, w)
                })
                .collect(),
        }
    }

    /// The scalar value if the operator is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Cx<R>> {
        let n = self.normal_terms();
        match n.len() {
            0 => Some(Cx::zero()),
            1 => n.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

fn normal_word(a: u32, b: u32) -> Vec<Letter> {
    std::iter::repeat_n(Letter::Q, a as usize).chain(std::iter::repeat_n(Letter::P, b as usize)).collect()
}

pub(crate) fn add_into<R: Coefficient>(m: &mut NormalTerms<R>, k: (u32, u32), c: Cx<R>) {
    if coeff::is_zero(&c) {
        return;
    }
    let slot = m.entry(k).or_insert_with(Cx::zero);
    *slot = slot.clone() + c;
    if coeff::is_zero(slot) {
        m.remove(&k);
    }
}

fn merge<R: Coefficient>(m: &mut NormalTerms<R>, other: &NormalTerms<R>) {
    for (k, c) in other {
        add_into(m, *k, c.clone());
    }
}

/// `x * Q` or `x * P` for normal-ordered `x`; `P^b Q = Q P^b - i b P^(b-1)`.
fn right_letter<R: Coefficient>(x: &NormalTerms<R>, l: Letter) -> NormalTerms<R> {
    let mut out = NormalTerms::new();
    for (&(a, b), c) in x {
        match l {
            Letter::P => add_into(&mut out, (a, b + 1), c.clone()),
            Letter::Q => {
                add_into(&mut out, (a + 1, b), c.clone());
                if b > 0 {
                    add_into(&mut out, (a, b - 1), c.clone() * Complex::new(R::zero(), -R::from_u32(b).unwrap()));
                }
            }
        }
    }
    out
}

/// Product of normal-ordered operators, using
/// `P^b Q^e = sum_k (-i)^k k! C(b,k) C(e,k) Q^(e-k) P^(b-k)`.
pub fn nmul<R: Coefficient>(x: &NormalTerms<R>, y: &NormalTerms<R>) -> NormalTerms<R> {
    let mut out = NormalTerms::new();
    for (&(a, b), c) in x {
        for (&(e, f), d) in y {
            for k in 0..=b.min(e) {
                let w = coeff::factorial::<R>(k) * coeff::binomial::<R>(b, k) * coeff::binomial::<R>(e, k);
                let z = coeff::scale_real(&(coeff::i_pow::<R>(3 * k) * c.clone() * d.clone()), &w);
                add_into(&mut out, (a + e - k, b - k + f), z);
            }
        }
    }
    out
}

impl<R: Coefficient> fmt::Display for NCPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(c, w)| {
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            while i < w.len() {
                let j = w[i..].iter().take_while(|l| **l == w[i]).count();
                let name = if w[i] == Letter::Q { "Q" } else { "P" };
                parts.push(coeff::power(name, j as u32).unwrap());
                i += j;
            }
            (c.clone(), parts.join("*"))
        });
        f.write_str(&coeff::render_terms(items))
    }
}

impl<R: Coefficient> Add for &NCPoly<R> {
    type Output = NCPoly<R>;
    fn add(self, rhs: Self) -> NCPoly<R> {
        NCPoly { terms: self.terms.iter().chain(&rhs.terms).cloned().collect() }
    }
}

impl<R: Coefficient> Sub for &NCPoly<R> {
    type Output = NCPoly<R>;
    fn sub(self, rhs: Self) -> NCPoly<R> {
        self + &(-rhs)
    }
}

impl<R: Coefficient> Neg for &NCPoly<R> {
    type Output = NCPoly<R>;
    fn neg(self) -> NCPoly<R> {
        NCPoly { terms: self.terms.iter().map(|(c, w)| (-c.clone(), w.clone())).collect() }
    }
}

/// Concatenation of words; the result is not normalized.
impl<R: Coefficient> Mul for &NCPoly<R> {
    type Output = NCPoly<R>;
    fn mul(self, rhs: Self) -> NCPoly<R> {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (c, w) in &self.terms {
            for (d, v) in &rhs.terms {
                let z = c.clone() * d.clone();
                if !coeff::is_zero(&z) {
                    terms.push((z, w.iter().chain(v).copied().collect()));
                }
            }
        }
        NCPoly { terms }
    }
}

by_value!(NCPoly, Add add, Sub sub, Mul mul);

impl<R: Coefficient> Neg for NCPoly<R> {
    type Output = NCPoly<R>;
    fn neg(self) -> NCPoly<R> {
        -&self
    }
}
