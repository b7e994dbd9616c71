//! Commutative polynomial symbols in `q` and `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{self, Coefficient, Cx};

/// `sum c_{ab} q^a p^b` with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySymbol<R: Coefficient = BigRational> {
    terms: BTreeMap<(u32, u32), Cx<R>>,
}

impl<R: Coefficient> Default for PolySymbol<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient> PolySymbol<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: Cx<R>) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(coeff::int(1))
    }

    pub fn q() -> Self {
        Self::term(coeff::int(1), 1, 0)
    }

    pub fn p() -> Self {
        Self::term(coeff::int(1), 0, 1)
    }

    /// `q^a p^b`.
    pub fn monomial(a: u32, b: u32) -> Self {
        Self::term(coeff::int(1), a, b)
    }

    pub fn term(c: Cx<R>, a: u32, b: u32) -> Self {
        let mut s = Self::zero();
        s.add_term(c, a, b);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Cx<R>)>) -> Self {
        let mut s = Self::zero();
        for ((a, b), c) in terms {
            s.add_term(c, a, b);
        }
        s
    }

    pub fn add_term(&mut self, c: Cx<R>, a: u32, b: u32) {
        if coeff::is_zero(&c) {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Cx::zero);
        *slot = slot.clone() + c;
        if coeff::is_zero(slot) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Cx<R>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Cx<R> {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Cx::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero symbol has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn degree_q(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_p(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Cx<R>) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())))
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.conj())))
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn constant_term(&self) -> Cx<R> {
        self.coeff(0, 0)
    }

    pub fn without_constant(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&(0, 0));
        s
    }

    /// `d^j/dq^j d^k/dp^k`.
    pub fn derivative(&self, j: u32, k: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|((a, b), _)| *a >= j && *b >= k).map(|((a, b), c)| {
            let f = coeff::falling::<R>(*a, j) * coeff::falling::<R>(*b, k);
            ((a - j, b - k), coeff::scale_real(c, &f))
        }))
    }

    pub fn d_q(&self) -> Self {
        self.derivative(1, 0)
    }

    pub fn d_p(&self) -> Self {
        self.derivative(0, 1)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The substitution `q -> p`, `p -> -q`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((a, b), c)| {
            let c = if b % 2 == 1 { -c.clone() } else { c.clone() };
            ((*b, *a), c)
        }))
    }

    pub fn eval(&self, q: f64, p: f64) -> num_complex::Complex64 {
        self.terms.iter().fold(num_complex::Complex64::zero(), |acc, ((a, b), c)| {
            let w = q.powi(*a as i32) * p.powi(*b as i32);
            acc + num_complex::Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN)) * w
        })
    }
}

impl<R: Coefficient> fmt::Display for PolySymbol<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|x, y| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
        let items = keys.into_iter().map(|(a, b)| {
            let mono: Vec<String> = [coeff::power("q", a), coeff::power("p", b)].into_iter().flatten().collect();
            (self.terms[&(a, b)].clone(), mono.join("*"))
        });
        f.write_str(&coeff::render_terms(items))
    }
}

impl<R: Coefficient> Add for &PolySymbol<R> {
    type Output = PolySymbol<R>;
    fn add(self, rhs: Self) -> PolySymbol<R> {
        let mut s = self.clone();
        for ((a, b), c) in &rhs.terms {
            s.add_term(c.clone(), *a, *b);
        }
        s
    }
}

impl<R: Coefficient> Sub for &PolySymbol<R> {
    type Output = PolySymbol<R>;
    fn sub(self, rhs: Self) -> PolySymbol<R> {
        let mut s = self.clone();
        for ((a, b), c) in &rhs.terms {
            s.add_term(-c.clone(), *a, *b);
        }
        s
    }
}

impl<R: Coefficient> Neg for &PolySymbol<R> {
    type Output = PolySymbol<R>;
    fn neg(self) -> PolySymbol<R> {
        PolySymbol::from_terms(self.terms.iter().map(|(k, c)| (*k, -c.clone())))
    }
}

impl<R: Coefficient> Mul for &PolySymbol<R> {
    type Output = PolySymbol<R>;
    fn mul(self, rhs: Self) -> PolySymbol<R> {
        let mut s = PolySymbol::zero();
        for ((a, b), c) in &self.terms {
            for ((e, g), d) in &rhs.terms {
                s.add_term(c.clone() * d.clone(), a + e, b + g);
            }
        }
        s
    }
}

macro_rules! by_value {
    ($ty:ident, $($tr:ident $m:ident),*) => {$(
        impl<R: Coefficient> $tr for $ty<R> {
            type Output = $ty<R>;
            fn $m(self, rhs: Self) -> $ty<R> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
pub(crate) use by_value;

by_value!(PolySymbol, Add add, Sub sub, Mul mul);

impl<R: Coefficient> Neg for PolySymbol<R> {
    type Output = PolySymbol<R>;
    fn neg(self) -> PolySymbol<R> {
        -&self
    }
}

impl<R: Coefficient> From<Cx<R>> for PolySymbol<R> {
    fn from(c: Cx<R>) -> Self {
        Self::constant(c)
    }
}

