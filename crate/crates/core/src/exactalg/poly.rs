//! Sparse polynomials over the rationals, generic in the monomial type.
//!
//! A monomial is an exponent: `u32` for univariate polynomials, `[u32; K]`
//! for `K` variables. Terms live in a `BTreeMap`, so iteration is in
//! ascending exponent order (lexicographic for vectors) and the last entry
//! is the leading term.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational; always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent (monomial) of a sparse polynomial.
pub trait Exponent: Copy + Ord + Hash + Debug + Send + Sync + 'static {
    const ZERO: Self;
    /// Variable names used by `Display`.
    const NAMES: &'static [&'static str];

    fn add(self, other: Self) -> Self;
    /// Componentwise difference; `None` if any component would become negative.
    fn checked_sub(self, other: Self) -> Option<Self>;
    fn components(&self) -> &[u32];
    fn from_components(c: &[u32]) -> Self;
}

impl Exponent for u32 {
    const ZERO: Self = 0;
    const NAMES: &'static [&'static str] = &["q"];

    fn add(self, other: Self) -> Self {
        self + other
    }

    fn checked_sub(self, other: Self) -> Option<Self> {
        u32::checked_sub(self, other)
    }

    fn components(&self) -> &[u32] {
        std::slice::from_ref(self)
    }

    fn from_components(c: &[u32]) -> Self {
        c[0]
    }
}

/// Name tables for the fixed-arity vector exponents used in this crate.
const NAMES_2: &[&str] = &["N", "q"];
const NAMES_4: &[&str] = &["q", "X", "N", "A"];
const NAMES_GENERIC: &[&str] = &["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"];

impl<const K: usize> Exponent for [u32; K] {
    const ZERO: Self = [0; K];
    const NAMES: &'static [&'static str] = match K {
        2 => NAMES_2,
        4 => NAMES_4,
        _ => NAMES_GENERIC,
    };

    fn add(self, other: Self) -> Self {
        let mut out = self;
        for (o, e) in out.iter_mut().zip(other) {
            *o += e;
        }
        out
    }

    fn checked_sub(self, other: Self) -> Option<Self> {
        let mut out = self;
        for (o, e) in out.iter_mut().zip(other) {
            *o = o.checked_sub(e)?;
        }
        Some(out)
    }

    fn components(&self) -> &[u32] {
        self
    }

    fn from_components(c: &[u32]) -> Self {
        let mut out = [0; K];
        out.copy_from_slice(&c[..K]);
        out
    }
}

/// Sparse polynomial: a map from exponent to nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<E: Exponent> {
    terms: BTreeMap<E, Rational>,
}

impl<E: Exponent> Default for Poly<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Exponent> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(E::ZERO, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(e: E, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// The monomial `1·e`.
    pub fn term(e: E) -> Self {
        Self::monomial(e, Rational::one())
    }

    /// Builds a polynomial from (possibly repeated) terms, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (E, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&E::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == E::ZERO)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &E) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&E::ZERO)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&E, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// The greatest term under the exponent order.
    pub fn leading(&self) -> Option<(&E, &Rational)> {
        self.terms.iter().next_back()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Sign shared by every coefficient: `Some(1)`, `Some(-1)`, or `None` if mixed or zero.
    pub fn uniform_sign(&self) -> Option<i8> {
        if self.terms.values().all(|c| c.is_positive()) && !self.is_zero() {
            Some(1)
        } else if self.terms.values().all(|c| c.is_negative()) && !self.is_zero() {
            Some(-1)
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, e: E, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by the single term `c·e`.
    pub fn mul_term(&self, e: E, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    ///
    /// Works in any number of variables: in lexicographic order the leading
    /// term of an exact quotient is forced, so a non-divisible leading term
    /// proves non-divisibility.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (&d_lead, d_coeff) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&e, c)) = rem.leading() {
            let shift = e.checked_sub(d_lead)?;
            let factor = c / d_coeff;
            for (de, dc) in d.terms.iter() {
                rem.add_term(de.add(shift), -(dc * &factor));
            }
            quot.add_term(shift, factor);
        }
        Some(quot)
    }

    /// Applies `f` to every exponent, summing terms that collide.
    pub fn map_exponents<F: Exponent>(&self, f: impl Fn(E) -> F) -> Poly<F> {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// Applies `f` to every term; terms mapped to `None` are dropped.
    pub fn filter_map_terms<F: Exponent>(
        &self,
        f: impl Fn(E, &Rational) -> Option<(F, Rational)>,
    ) -> Poly<F> {
        Poly::from_terms(self.terms.iter().filter_map(|(e, c)| f(*e, c)))
    }

    /// Canonical text: ascending exponents, explicit signs.
    /// `spaced` puts spaces around the binary `+`/`-`.
    pub fn render(&self, names: &[&str], spaced: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative, spaced) {
                (0, true, _) => out.push('-'),
                (0, false, _) => {}
                (_, true, true) => out.push_str(" - "),
                (_, false, true) => out.push_str(" + "),
                (_, true, false) => out.push('-'),
                (_, false, false) => out.push('+'),
            }
            out.push_str(&render_term(&c.abs(), e.components(), names));
        }
        out
    }
}

fn render_term(abs: &Rational, exps: &[u32], names: &[&str]) -> String {
    let vars: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, name)| if *e == 1 { name.to_string() } else { format!("{name}^{e}") })
        .collect();
    if vars.is_empty() {
        return abs.to_string();
    }
    let body = vars.join("*");
    if abs.is_one() {
        body
    } else {
        format!("{abs}*{body}")
    }
}

impl<E: Exponent> fmt::Display for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(E::NAMES, true))
    }
}

impl<E: Exponent> Debug for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<E: Exponent> Add<&Poly<E>> for &Poly<E> {
    type Output = Poly<E>;
    fn add(self, rhs: &Poly<E>) -> Poly<E> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<E: Exponent> Sub<&Poly<E>> for &Poly<E> {
    type Output = Poly<E>;
    fn sub(self, rhs: &Poly<E>) -> Poly<E> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<E: Exponent> Mul<&Poly<E>> for &Poly<E> {
    type Output = Poly<E>;
    fn mul(self, rhs: &Poly<E>) -> Poly<E> {
        let mut out = Poly::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                out.add_term(ea.add(*eb), ca * cb);
            }
        }
        out
    }
}

impl<E: Exponent> Neg for &Poly<E> {
    type Output = Poly<E>;
    fn neg(self) -> Poly<E> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<E: Exponent> Neg for Poly<E> {
    type Output = Poly<E>;
    fn neg(mut self) -> Poly<E> {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl<E: Exponent> AddAssign<&Poly<E>> for Poly<E> {
    fn add_assign(&mut self, rhs: &Poly<E>) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c.clone());
        }
    }
}

impl<E: Exponent> SubAssign<&Poly<E>> for Poly<E> {
    fn sub_assign(&mut self, rhs: &Poly<E>) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, -c);
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<E: Exponent> $tr<Poly<E>> for Poly<E> {
            type Output = Poly<E>;
            fn $m(self, rhs: Poly<E>) -> Poly<E> {
                (&self).$m(&rhs)
            }
        }
        impl<E: Exponent> $tr<&Poly<E>> for Poly<E> {
            type Output = Poly<E>;
            fn $m(self, rhs: &Poly<E>) -> Poly<E> {
                (&self).$m(rhs)
            }
        }
        impl<E: Exponent> $tr<Poly<E>> for &Poly<E> {
            type Output = Poly<E>;
            fn $m(self, rhs: Poly<E>) -> Poly<E> {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
