//! Ratios of sparse polynomials, compared by cross-multiplication.
//!
//! No canonical form is maintained: numerator and denominator are whatever
//! the producing computation left behind, and equality is decided by testing
//! `a.num·b.den - b.num·a.den` for zero.

use std::fmt;

use num_traits::One;

use super::poly::{Exponent, Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RationalFunction<E: Exponent> {
    num: Poly<E>,
    den: Poly<E>,
}

/// Ratio of polynomials in `(N, q)`.
pub type NRational = RationalFunction<[u32; 2]>;
/// Ratio of polynomials in `(q, X, N, A)`.
pub type MultiRational = RationalFunction<[u32; 4]>;

impl<E: Exponent> RationalFunction<E> {
    pub fn new(num: Poly<E>, den: Poly<E>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly<E>) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<E> {
        &self.num
    }

    pub fn den(&self) -> &Poly<E> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<E>, Poly<E>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The same function with common monomial content removed, each of
    /// `factors` cancelled while it divides both sides, and the denominator's
    /// leading coefficient scaled to 1.
    pub fn cancel(&self, factors: &[Poly<E>]) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let width = self.den.terms().next().map_or(0, |(e, _)| e.components().len());
        let mut low = vec![u32::MAX; width];
        for (e, _) in self.num.terms().chain(self.den.terms()) {
            for (l, c) in low.iter_mut().zip(e.components()) {
                *l = (*l).min(*c);
            }
        }
        let content = Poly::term(E::from_components(&low));
        let mut num = self.num.div_exact(&content).expect("content divides every term");
        let mut den = self.den.div_exact(&content).expect("content divides every term");
        for f in factors.iter().filter(|f| !f.is_constant()) {
            while let (Some(n), Some(d)) = (num.div_exact(f), den.div_exact(f)) {
                num = n;
                den = d;
            }
        }
        RationalFunction { num, den }.normalize_leading()
    }

    /// The value as a polynomial, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<Poly<E>> {
        self.num.div_exact(&self.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFunction { num: &self.num + &other.num, den: self.den.clone() };
        }
        RationalFunction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn mul_poly(&self, p: &Poly<E>) -> Self {
        RationalFunction { num: &self.num * p, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num: &self.num * &other.den, den: &self.den * &other.num })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    /// Applies a ring map to numerator and denominator.
    pub fn map_polys<F: Exponent>(&self, f: impl Fn(&Poly<E>) -> Poly<F>) -> Result<RationalFunction<F>> {
        RationalFunction::new(f(&self.num), f(&self.den))
    }

    /// `num·other.den - other.num·den`; zero iff the two functions are equal.
    pub fn cross_residual(&self, other: &Self) -> Poly<E> {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    /// Divides numerator and denominator by the denominator's leading
    /// coefficient, and cancels a common constant. Purely cosmetic.
    pub fn normalize_leading(&self) -> Self {
        let lead = self.den.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
        let inv = Rational::one() / lead;
        RationalFunction { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }
}

/// Equality of rational functions by cross-multiplication.
pub fn rational_equal<E: Exponent>(a: &RationalFunction<E>, b: &RationalFunction<E>) -> bool {
    a.cross_residual(b).is_zero()
}

impl<E: Exponent> PartialEq for RationalFunction<E> {
    fn eq(&self, other: &Self) -> bool {
        rational_equal(self, other)
    }
}

impl<E: Exponent> fmt::Display for RationalFunction<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<E: Exponent> fmt::Debug for RationalFunction<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl<E: Exponent> From<Poly<E>> for RationalFunction<E> {
    fn from(p: Poly<E>) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::rat;

    type NPoly2 = Poly<[u32; 2]>;

    #[test]
    fn cancel_strips_content_and_factors() {
        let f = &n() - &NPoly2::term([0, 1]);
        let num = &(&f * &f) * &NPoly2::monomial([2, 3], rat(6));
        let den = &f * &NPoly2::monomial([1, 5], rat(-3));
        let r = RationalFunction::new(num, den).unwrap();
        let c = r.cancel(std::slice::from_ref(&f));
        assert!(rational_equal(&c, &r));
        assert_eq!(c.den(), &NPoly2::term([0, 2]));
        assert_eq!(c.num(), &f.mul_term([1, 0], &rat(-2)));
        assert!(RationalFunction::<[u32; 2]>::zero().cancel(&[f]).is_zero());
    }

    fn n() -> NPoly2 {
        NPoly2::term([1, 0])
    }
    fn q(e: u32) -> NPoly2 {
        NPoly2::term([0, e])
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let one = NPoly2::one();
        // (N-q)/(q-q^2) vs (N-q)/(q(1-q))
        let a = NRational::new(&n() - &q(1), &q(1) - &q(2)).unwrap();
        let b = NRational::new(&n() - &q(1), &q(1) * &(&one - &q(1))).unwrap();
        assert!(rational_equal(&a, &b));

        let c = NRational::new(&one - &q(1), &one - &q(1)).unwrap();
        assert!(rational_equal(&NRational::one(), &c));

        let d = NRational::new(&n() - &q(2), &q(1) * &(&one - &q(1))).unwrap();
        assert!(!rational_equal(&b, &d));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(NRational::new(n(), &q(1) - &q(1)).unwrap_err(), Error::ZeroDenominator);
        assert!(NRational::one().div(&NRational::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let a = NRational::new(n(), &q(1) + &NPoly2::one()).unwrap();
        let b = NRational::new(q(2), &n() - &q(1)).unwrap();
        let s = a.add(&b).sub(&b);
        assert!(rational_equal(&s, &a));
        let p = a.mul(&b).div(&b).unwrap();
        assert!(rational_equal(&p, &a));
        assert!(rational_equal(&a.scale(&rat(2)), &a.add(&a)));
    }
}
