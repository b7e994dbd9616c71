//! Text form of polynomial symbols.
//!
//! ```text
//! expr   := ['+' | '-'] term {('+' | '-') term}
//! term   := unary {['*'] unary}        juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ['^' digits]
//! atom   := number ['/' number] | 'q' | 'p' | 'i' | '(' expr ')'
//! number := digits ['.' digits]
//! ```
//!
//! Examples: `q^2*p - (1/2)i`, `3i*q*p`, `(q + p)^3`, `-(1/2 + (3/4)i)*p`.
//! Whitespace is ignored. The [`std::fmt::Display`] output of a symbol parses
//! back to the same symbol.


use crate::coeff::{self, Coefficient, Cx};
use crate::symbol::PolySymbol;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self, allow_dot: bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || (allow_dot && self.src[self.pos] == b'.')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn number<R: Coefficient>(&mut self) -> Result<R, ParseError> {
        let s = self.digits(true);
        match R::parse_literal(s) {
            Some(v) => Ok(v),
            None => self.err(format!("bad number '{s}'")),
        }
    }

    fn expr<R: Coefficient>(&mut self) -> Result<PolySymbol<R>, ParseError> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'.' | b'q' | b'p' | b'i' | b'('))
    }

    fn term<R: Coefficient>(&mut self) -> Result<PolySymbol<R>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') || self.starts_factor() {
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<R: Coefficient>(&mut self) -> Result<PolySymbol<R>, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let s = self.digits(false);
            match s.parse::<u32>() {
                Ok(k) => Ok(base.pow(k)),
                Err(_) => self.err("expected an exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<R: Coefficient>(&mut self) -> Result<PolySymbol<R>, ParseError> {
        match self.peek() {
            Some(b'0'..=b'9' | b'.') => {
                let mut v: R = self.number()?;
                if self.eat(b'/') {
                    let d: R = self.number()?;
                    if d.is_zero() {
                        return self.err("division by zero");
                    }
                    v = v / d;
                }
                Ok(PolySymbol::constant(Cx::new(v, R::zero())))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(PolySymbol::q())
            }
            Some(b'p') => {
                self.pos += 1;
                Ok(PolySymbol::p())
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(PolySymbol::constant(coeff::imag(1, 1)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_symbol<R: Coefficient>(s: &str) -> Result<PolySymbol<R>, ParseError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl<R: Coefficient> std::str::FromStr for PolySymbol<R> {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_symbol(s)
    }
}
