//! Polynomial differential operators in two variables.
//!
//! A term `c [a, b, j, k]` means `c u^a v^b (d/du)^j (d/dv)^k`, with every
//! multiplication to the left of every derivative. The same algebra serves
//! phase-space generators in `(q, p)` and their images in `(x, y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{self, Coefficient, Cx};
use crate::symbol::PolySymbol;

pub trait Vars: Clone + Copy + fmt::Debug + PartialEq + Send + Sync + 'static {
    const NAMES: [&'static str; 2];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseVars;

impl Vars for PhaseVars {
    const NAMES: [&'static str; 2] = ["q", "p"];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairVars;

impl Vars for PairVars {
    const NAMES: [&'static str; 2] = ["x", "y"];
}

pub type Key = [u32; 4];

#[derive(Debug, Clone, PartialEq)]
pub struct DiffOp<R: Coefficient = BigRational, V: Vars = PhaseVars> {
    terms: BTreeMap<Key, Cx<R>>,
    _vars: PhantomData<V>,
}

/// Operators on functions of `(x, y)`.
pub type TwoVarOp<R = BigRational> = DiffOp<R, PairVars>;

/// Operators on functions of `x` alone; stored as a [`TwoVarOp`] without
/// `y` dependence.
pub type XOp<R = BigRational> = DiffOp<R, PairVars>;

impl<R: Coefficient, V: Vars> Default for DiffOp<R, V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient, V: Vars> DiffOp<R, V> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), _vars: PhantomData }
    }

    pub fn scalar(c: Cx<R>) -> Self {
        Self::term(c, [0, 0, 0, 0])
    }

    pub fn identity() -> Self {
        Self::scalar(coeff::int(1))
    }

    pub fn term(c: Cx<R>, key: Key) -> Self {
        let mut s = Self::zero();
        s.add_term(key, c);
        s
    }

    /// Multiplication by the first (`which = 0`) or second variable.
    pub fn var(which: usize) -> Self {
        let mut k = [0; 4];
        k[which] = 1;
        Self::term(coeff::int(1), k)
    }

    /// Derivative in the first (`which = 0`) or second variable.
    pub fn deriv(which: usize) -> Self {
        let mut k = [0; 4];
        k[2 + which] = 1;
        Self::term(coeff::int(1), k)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Key, Cx<R>)>) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, key: Key, c: Cx<R>) {
        if coeff::is_zero(&c) {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Cx::zero);
        *slot = slot.clone() + c;
        if coeff::is_zero(slot) {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Cx<R>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: Key) -> Cx<R> {
        self.terms.get(&key).cloned().unwrap_or_else(Cx::zero)
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

    pub fn scale(&self, s: &Cx<R>) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.clone() * s.clone())))
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.conj())))
    }

    /// Highest derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k[2] + k[3]).max().unwrap_or(0)
    }

    /// Scalar value if the operator is a constant multiple of the identity.
    pub fn as_scalar(&self) -> Option<Cx<R>> {
        match self.terms.len() {
            0 => Some(Cx::zero()),
            1 => self.terms.get(&[0, 0, 0, 0]).cloned(),
            _ => None,
        }
    }

    /// `self o other` in normal order, using
    /// `D^j u^e = sum_k C(j,k) e!/(e-k)! u^(e-k) D^(j-k)` in each variable.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                let cd = c.clone() * d.clone();
                for k in 0..=x[2].min(y[0]) {
                    let wk = coeff::binomial::<R>(x[2], k) * coeff::falling::<R>(y[0], k);
                    for l in 0..=x[3].min(y[1]) {
                        let w = wk.clone() * coeff::binomial::<R>(x[3], l) * coeff::falling::<R>(y[1], l);
                        let key = [x[0] + y[0] - k, x[1] + y[1] - l, x[2] - k + y[2], x[3] - l + y[3]];
                        out.add_term(key, coeff::scale_real(&cd, &w));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// Integration-by-parts transpose: `(c u^a v^b Du^j Dv^k)^T = (-1)^(j+k) c Du^j Dv^k u^a v^b`.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let sign = if (k[2] + k[3]) % 2 == 1 { coeff::int(-1) } else { coeff::int(1) };
            let d = Self::term(c.clone() * sign, [0, 0, k[2], k[3]]);
            out = &out + &d.compose(&Self::term(coeff::int(1), [k[0], k[1], 0, 0]));
        }
        out
    }

    /// Formal hermitian adjoint, the conjugate of the transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    /// Every coefficient is purely imaginary.
    pub fn is_pure_imaginary(&self) -> bool {
        self.terms.values().all(|c| c.re.is_zero())
    }

    /// Applies the operator to a polynomial in the two variables; a
    /// [`PolySymbol`] is read with its `q` and `p` as the first and second
    /// variable.
    pub fn apply(&self, f: &PolySymbol<R>) -> PolySymbol<R> {
        let mut out = PolySymbol::zero();
        for (k, c) in &self.terms {
            let g = f.derivative(k[2], k[3]);
            out = &out + &(&PolySymbol::term(c.clone(), k[0], k[1]) * &g);
        }
        out
    }

    /// `P` with `self exp(-u^2 - v^2) = P exp(-u^2 - v^2)`.
    pub fn apply_to_gaussian(&self) -> PolySymbol<R> {
        // d(f G) = (f' - 2u f) G
        let q2 = PolySymbol::term(coeff::int::<R>(-2), 1, 0);
        let p2 = PolySymbol::term(coeff::int::<R>(-2), 0, 1);
        let dq = |f: &PolySymbol<R>| f.d_q() + &q2 * f;
        let dp = |f: &PolySymbol<R>| f.d_p() + &p2 * f;
        let mut out = PolySymbol::zero();
        for (k, c) in &self.terms {
            let mut g = PolySymbol::one();
            for _ in 0..k[3] {
                g = dp(&g);
            }
            for _ in 0..k[2] {
                g = dq(&g);
            }
            out = &out + &(&PolySymbol::term(c.clone(), k[0], k[1]) * &g);
        }
        out
    }

    /// Terms that involve the second variable.
    pub fn depends_on_second(&self) -> bool {
        self.terms.keys().any(|k| k[1] > 0 || k[3] > 0)
    }

    pub fn retag<W: Vars>(&self) -> DiffOp<R, W> {
        DiffOp { terms: self.terms.clone(), _vars: PhantomData }
    }
}

impl<R: Coefficient> DiffOp<R, PairVars> {
    /// `x` in the first slot moved to the second: `f(x, Dx) -> f(y, Dy)`.
    pub fn to_second(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| ([k[1], k[0], k[3], k[2]], c.clone())))
    }
}

impl<R: Coefficient, V: Vars> fmt::Display for DiffOp<R, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [u, v] = V::NAMES;
        let du = format!("d{u}");
        let dv = format!("d{v}");
        let mut keys: Vec<Key> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k[2] + k[3], k[0] + k[1], k[2], k[0])));
        let items = keys.into_iter().map(|k| {
            let parts: Vec<String> = [
                coeff::power(u, k[0]),
                coeff::power(v, k[1]),
                coeff::power(&du, k[2]),
                coeff::power(&dv, k[3]),
            ]
            .into_iter()
            .flatten()
            .collect();
            (self.terms[&k].clone(), parts.join("*"))
        });
        f.write_str(&coeff::render_terms(items))
    }
}

impl<R: Coefficient, V: Vars> Add for &DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn add(self, rhs: Self) -> DiffOp<R, V> {
        let mut s = self.clone();
        for (k, c) in &rhs.terms {
            s.add_term(*k, c.clone());
        }
        s
    }
}

impl<R: Coefficient, V: Vars> Sub for &DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn sub(self, rhs: Self) -> DiffOp<R, V> {
        self + &(-rhs)
    }
}

impl<R: Coefficient, V: Vars> Neg for &DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn neg(self) -> DiffOp<R, V> {
        DiffOp::from_terms(self.terms.iter().map(|(k, c)| (*k, -c.clone())))
    }
}

/// Composition.
impl<R: Coefficient, V: Vars> Mul for &DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn mul(self, rhs: Self) -> DiffOp<R, V> {
        self.compose(rhs)
    }
}

impl<R: Coefficient, V: Vars> Add for DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn add(self, rhs: Self) -> DiffOp<R, V> {
        &self + &rhs
    }
}

impl<R: Coefficient, V: Vars> Sub for DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn sub(self, rhs: Self) -> DiffOp<R, V> {
        &self - &rhs
    }
}

impl<R: Coefficient, V: Vars> Mul for DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn mul(self, rhs: Self) -> DiffOp<R, V> {
        self.compose(&rhs)
    }
}

impl<R: Coefficient, V: Vars> Neg for DiffOp<R, V> {
    type Output = DiffOp<R, V>;
    fn neg(self) -> DiffOp<R, V> {
        -&self
    }
}
