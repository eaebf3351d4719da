//! Polynomials in `X` whose coefficients are polynomials in `q`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::poly::Rational;
use super::univariate::QPoly;

/// `Σ_a c_a(q)·X^a`, stored sparsely by X-degree with no zero entries.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct XQPoly {
    coeffs: BTreeMap<u32, QPoly>,
}

impl XQPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeff(0, QPoly::one())
    }

    /// The single term `c·X^a`.
    pub fn from_coeff(a: u32, c: QPoly) -> Self {
        let mut p = Self::zero();
        p.add_coeff(a, &c);
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, QPoly)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (a, c) in it {
            p.add_coeff(a, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `X^a` (zero if absent).
    pub fn coeff(&self, a: u32) -> QPoly {
        self.coeffs.get(&a).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = (&u32, &QPoly)> {
        self.coeffs.iter()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(QPoly::is_integral)
    }

    fn add_coeff(&mut self, a: u32, c: &QPoly) {
        let entry = self.coeffs.entry(a).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&a);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in other.coeffs.iter() {
            out.add_coeff(*a, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        XQPoly { coeffs: self.coeffs.iter().map(|(a, c)| (*a, -c)).collect() }
    }

    /// Multiplies by `c·X^x_shift·q^q_shift`.
    pub fn mul_monomial(&self, c: &Rational, x_shift: u32, q_shift: u32) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(a, p)| (a + x_shift, p.mul_term(q_shift, c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.coeffs.iter() {
            for (b, cb) in other.coeffs.iter() {
                out.add_coeff(a + b, &(ca * cb));
            }
        }
        out
    }

    /// Drops every q-power above `order` in every coefficient.
    pub fn truncate_q(&self, order: u32) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(a, c)| (*a, c.truncate(order))))
    }

    /// Substitutes `X ← c·q^e`.
    pub fn substitute_x(&self, c: &Rational, e: u32) -> QPoly {
        let mut out = QPoly::zero();
        let mut power = Rational::one();
        let mut last = 0;
        for (a, p) in self.coeffs.iter() {
            for _ in last..*a {
                power *= c;
            }
            last = *a;
            out += &p.mul_term(a * e, &power);
        }
        out
    }
}

impl fmt::Display for XQPoly {
    /// Canonical text, e.g. `1 - (1+q+q^2)*X + q^2*X^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.coeffs.iter().enumerate() {
            let negative = c.uniform_sign() == Some(-1);
            let body = if negative { -c } else { c.clone() };
            let coeff_text = if body.is_one() {
                String::new()
            } else if body.len() == 1 {
                body.render(&["q"], false)
            } else {
                format!("({})", body.render(&["q"], false))
            };
            let x_text = match a {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{a}"),
            };
            let term = match (coeff_text.is_empty(), x_text.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => x_text,
                (false, true) => coeff_text,
                (false, false) => format!("{coeff_text}*{x_text}"),
            };
            let sep = match (i, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}{term}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for XQPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XQPoly({self})")
    }
}
