//! Parser for the text forms of polynomials and rational functions.
//!
//! Accepts sums and products of integers, the variables `q`, `X`, `N`, `A`,
//! integer powers (`q^3`, `q^-1`) and parentheses, plus the aliases
//! `q^n` for `N` and `q^a` for `A`. Division produces a rational function.
//! Everything the printers emit parses back to the same value.

use num_bigint::BigInt;

use super::interp::NPoly2;
use super::multi::{MultiPoly, Var};
use super::poly::Rational;
use super::ratfunc::{MultiRational, NRational};
use super::univariate::QPoly;
use super::xq::XQPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().expect("ascii digits")));
        } else if matches!(c, 'q' | 'X' | 'N' | 'A' | 'n' | 'a') {
            out.push(Tok::Ident(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} at position {i} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<MultiRational> {
        let mut acc = if self.eat_op('-') {
            self.term()?.neg()
        } else {
            self.eat_op('+');
            self.term()?
        };
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiRational> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat_op('/') {
                let d = self.factor()?;
                acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiRational> {
        if self.eat_op('-') {
            return Ok(self.factor()?.neg());
        }
        let ident = match self.peek() {
            Some(Tok::Ident(c)) => Some(*c),
            _ => None,
        };
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        if ident == Some('q') {
            match self.peek() {
                Some(Tok::Ident('n')) => {
                    self.pos += 1;
                    return Ok(MultiRational::from_poly(MultiPoly::var(Var::N)));
                }
                Some(Tok::Ident('a')) => {
                    self.pos += 1;
                    return Ok(MultiRational::from_poly(MultiPoly::var(Var::A)));
                }
                _ => {}
            }
        }
        let negative = self.eat_op('-');
        let e = match self.peek() {
            Some(Tok::Int(k)) => {
                let k = u32::try_from(k.clone()).map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                k
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        let mut out = MultiRational::one();
        for _ in 0..e {
            out = out.mul(&base);
        }
        if negative {
            out = out.recip().map_err(|_| self.err("zero to a negative power"))?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<MultiRational> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Int(k) => Ok(MultiRational::from_poly(MultiPoly::constant(Rational::from_integer(k)))),
            Tok::Ident('q') => Ok(MultiRational::from_poly(MultiPoly::var(Var::Q))),
            Tok::Ident('X') => Ok(MultiRational::from_poly(MultiPoly::var(Var::X))),
            Tok::Ident('N') => Ok(MultiRational::from_poly(MultiPoly::var(Var::N))),
            Tok::Ident('A') => Ok(MultiRational::from_poly(MultiPoly::var(Var::A))),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(Error::Parse(format!("unexpected token {tok:?} at {}", self.pos - 1))),
        }
    }
}

/// Parses a rational function in `(q, X, N, A)`.
pub fn parse_multi_rational(s: &str) -> Result<MultiRational> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

fn parse_poly(s: &str) -> Result<MultiPoly> {
    let r = parse_multi_rational(s)?;
    r.to_poly()
        .ok_or_else(|| Error::Parse(format!("{s:?} is not a polynomial")))
}

pub fn parse_qpoly(s: &str) -> Result<QPoly> {
    parse_poly(s)?
        .to_qpoly()
        .ok_or_else(|| Error::Parse(format!("{s:?} uses variables other than q")))
}

pub fn parse_xqpoly(s: &str) -> Result<XQPoly> {
    parse_poly(s)?
        .to_xqpoly()
        .ok_or_else(|| Error::Parse(format!("{s:?} uses variables other than q and X")))
}

pub fn parse_npoly2(s: &str) -> Result<NPoly2> {
    parse_poly(s)?
        .to_npoly2()
        .ok_or_else(|| Error::Parse(format!("{s:?} uses variables other than N and q")))
}

/// Parses a rational function in `(N, q)`.
pub fn parse_nrational(s: &str) -> Result<NRational> {
    parse_multi_rational(s)?
        .to_nrational()
        .ok_or_else(|| Error::Parse(format!("{s:?} uses variables other than N and q")))
}
