#![allow(dead_code)]

use phasespace_symbolic::*;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> BigRational {
    <BigRational as Coefficient>::ratio(n, d)
}

pub fn c(re: (i64, i64), im: (i64, i64)) -> Cq {
    Cq::new(q(re.0, re.1), q(im.0, im.1))
}

pub fn sym(s: &str) -> Symbol {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn complex() -> impl Strategy<Value = Cq> {
    (rational(), rational()).prop_map(|(a, b)| Cq::new(a, b))
}

pub fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Symbol> {
    prop::collection::vec(((0..=max_deg), (0..=max_deg), complex()), 0..=max_terms).prop_map(move |ts| {
        Symbol::from_terms(ts.into_iter().filter(|(a, b, _)| a + b <= max_deg).map(|(a, b, c)| ((a, b), c)))
    })
}

pub fn real_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Symbol> {
    prop::collection::vec(((0..=max_deg), (0..=max_deg), rational()), 0..=max_terms).prop_map(move |ts| {
        Symbol::from_terms(
            ts.into_iter().filter(|(a, b, _)| a + b <= max_deg).map(|(a, b, r)| ((a, b), Cq::new(r, q(0, 1)))),
        )
    })
}

pub fn word(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { Letter::Q } else { Letter::P }), 0..=max_len)
}

pub fn ncpoly(max_len: usize, max_terms: usize) -> impl Strategy<Value = Operator> {
    prop::collection::vec((complex(), word(max_len)), 0..=max_terms)
        .prop_map(|ts| ts.into_iter().fold(Operator::zero(), |acc, (c, w)| &acc + &Operator::word(c, w)))
}

/// Action on polynomials in one variable (stored in the `q` slot):
/// `Q` multiplies by the variable and `P` is `-i d/dx`.
pub fn act(op: &Operator, f: &Symbol) -> Symbol {
    let mut out = Symbol::zero();
    for (coef, w) in op.terms() {
        let mut g = f.clone();
        for l in w.iter().rev() {
            g = match l {
                Letter::Q => &Symbol::q() * &g,
                Letter::P => g.d_q().scale(&c((0, 1), (-1, 1))),
            };
        }
        out = &out + &g.scale(coef);
    }
    out
}

/// Average over every arrangement of `m` Q's and `n` P's.
pub fn symmetrized(m: u32, n: u32) -> Operator {
    let len = m + n;
    let mut out = Operator::zero();
    let mut count = 0i64;
    for mask in 0u32..(1 << len) {
        if mask.count_ones() != m {
            continue;
        }
        let w = (0..len).map(|b| if mask >> b & 1 == 1 { Letter::Q } else { Letter::P }).collect();
        out = &out + &Operator::word(c((1, 1), (0, 1)), w);
        count += 1;
    }
    out.scale(&c((1, count), (0, 1))).normalize()
}
