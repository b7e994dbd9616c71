//! Scalars for the symbolic layer.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Real field the symbolic coefficients live in.
///
/// `BigRational` is the exact choice used for every identity check; `f64`
/// is accepted for quick numerical evaluation.
pub trait Coefficient:
    Clone + Debug + Display + PartialEq + PartialOrd + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn ratio(n: i64, d: i64) -> Self;

    /// Parses an unsigned decimal literal such as `12` or `0.375`.
    fn parse_literal(s: &str) -> Option<Self>;
}

impl Coefficient for BigRational {
    fn ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        let digits = format!("{int}{frac}");
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        Some(BigRational::new(num, den))
    }
}

impl Coefficient for f64 {
    fn ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }

    fn parse_literal(s: &str) -> Option<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit() || b == b'.') {
            return None;
        }
        s.parse().ok()
    }
}

pub type Cx<R> = Complex<R>;

pub fn cx<R: Coefficient>(re: R, im: R) -> Cx<R> {
    Complex::new(re, im)
}

pub fn real<R: Coefficient>(n: i64, d: i64) -> Cx<R> {
    Complex::new(R::ratio(n, d), R::zero())
}

pub fn imag<R: Coefficient>(n: i64, d: i64) -> Cx<R> {
    Complex::new(R::zero(), R::ratio(n, d))
}

pub fn int<R: Coefficient>(n: i64) -> Cx<R> {
    real(n, 1)
}

/// `i^k`.
pub fn i_pow<R: Coefficient>(k: u32) -> Cx<R> {
    match k % 4 {
        0 => int(1),
        1 => imag(1, 1),
        2 => int(-1),
        _ => imag(-1, 1),
    }
}

pub fn is_zero<R: Coefficient>(c: &Cx<R>) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

pub fn factorial<R: Coefficient>(n: u32) -> R {
    (1..=n).fold(R::one(), |acc, k| acc * R::from_u32(k).expect("small integer"))
}

pub fn binomial<R: Coefficient>(n: u32, k: u32) -> R {
    if k > n {
        return R::zero();
    }
    factorial::<R>(n) / (factorial::<R>(k) * factorial::<R>(n - k))
}

/// `n! / (n - k)!`, zero when `k > n`.
pub fn falling<R: Coefficient>(n: u32, k: u32) -> R {
    if k > n {
        return R::zero();
    }
    ((n - k + 1)..=n).fold(R::one(), |acc, j| acc * R::from_u32(j).expect("small integer"))
}

pub fn scale_real<R: Coefficient>(c: &Cx<R>, r: &R) -> Cx<R> {
    Complex::new(c.re.clone() * r.clone(), c.im.clone() * r.clone())
}

fn literal<R: Coefficient>(r: &R) -> String {
    let s = r.to_string();
    if s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

/// Joins `(coefficient, monomial)` pairs into `a*m1 - (1/2)i*m2 + ...`.
///
/// The output is accepted by [`crate::parse_symbol`] whenever the monomials
/// are written in `q` and `p`.
pub(crate) fn render_terms<R: Coefficient>(terms: impl IntoIterator<Item = (Cx<R>, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let with = |head: String| if mono.is_empty() { head } else { format!("{head}*{mono}") };
        let (neg, body) = if c.im.is_zero() {
            let mag = c.re.abs();
            let body = if mag.is_one() && !mono.is_empty() { mono.clone() } else { with(literal(&mag)) };
            (c.re.is_negative(), body)
        } else if c.re.is_zero() {
            let mag = c.im.abs();
            let head = if mag.is_one() { "i".to_string() } else { format!("{}i", literal(&mag)) };
            (c.im.is_negative(), with(head))
        } else {
            let re = if c.re.is_negative() { format!("-{}", literal(&c.re.abs())) } else { literal(&c.re) };
            let op = if c.im.is_negative() { '-' } else { '+' };
            (false, with(format!("({re} {op} {}i)", literal(&c.im.abs()))))
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn power(name: &str, k: u32) -> Option<String> {
    match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    }
}
