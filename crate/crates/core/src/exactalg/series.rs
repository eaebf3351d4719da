//! Truncated power series in `q`.
//!
//! A series of order `K` carries the exact coefficients of `q^0..=q^K`.
//! Binary operations truncate to the smaller order.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Poly, Rational};
use super::univariate::QPoly;
use crate::error::{Error, Result};

/// Polynomial in `X` with rational coefficients (coefficient ring of X-carrying series).
pub type XPoly = Poly<u32>;

/// Coefficient ring of a [`QSeries`].
pub trait SeriesCoeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl SeriesCoeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl SeriesCoeff for XPoly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, PartialEq)]
pub struct QSeries<C: SeriesCoeff> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> QSeries<C> {
    /// The zero series of order `order`.
    pub fn zero(order: u32) -> Self {
        QSeries { coeffs: vec![C::zero(); order as usize + 1] }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// Takes `coeffs[i]` as the coefficient of `q^i`; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least one coefficient".into()));
        }
        Ok(QSeries { coeffs })
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, i: u32) -> &C {
        &self.coeffs[i as usize]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub(crate) fn coeff_mut(&mut self, i: u32) -> &mut C {
        &mut self.coeffs[i as usize]
    }

    pub fn truncate(&self, order: u32) -> Self {
        let keep = (order.min(self.order()) + 1) as usize;
        QSeries { coeffs: self.coeffs[..keep].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order()) as usize;
        QSeries { coeffs: (0..=k).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(C::neg).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order()) as usize;
        let mut out = vec![C::zero(); k + 1];
        for i in 0..=k {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                if !other.coeffs[j].is_zero() {
                    out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl QSeries<Rational> {
    /// Truncation of a polynomial in `q` at `order`.
    pub fn from_qpoly(p: &QPoly, order: u32) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in p.terms() {
            if *e <= order {
                s.coeffs[*e as usize] = c.clone();
            }
        }
        s
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_dense(&self.coeffs)
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<num_bigint::BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

/// Reciprocal of a series with invertible constant term, at the same order.
pub fn series_invert(s: &QSeries<Rational>) -> Result<QSeries<Rational>> {
    let c0 = s.coeff(0);
    if Zero::is_zero(c0) {
        return Err(Error::NonInvertibleSeries);
    }
    let inv0 = <Rational as One>::one() / c0;
    let k = s.order() as usize;
    let mut t: Vec<Rational> = Vec::with_capacity(k + 1);
    t.push(inv0.clone());
    for i in 1..=k {
        let mut acc = <Rational as Zero>::zero();
        for j in 1..=i {
            let sj = &s.coeffs[j];
            if !Zero::is_zero(sj) {
                acc += sj * &t[i - j];
            }
        }
        t.push(-(acc * &inv0));
    }
    Ok(QSeries { coeffs: t })
}

impl<C: SeriesCoeff> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QSeries").field("order", &self.order()).field("coeffs", &self.coeffs).finish()
    }
}

impl fmt::Display for QSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.to_qpoly(), self.order() + 1)
    }
}
