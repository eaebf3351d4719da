//! Univariate polynomials in `q`.

use num_traits::{One, Zero};

use super::poly::{rat, Poly, Rational};

/// Polynomial in `q` with rational coefficients.
pub type QPoly = Poly<u32>;

impl Poly<u32> {
    /// `q^e`.
    pub fn q_pow(e: u32) -> Self {
        Self::term(e)
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: u32) -> Self {
        Self::from_terms([(0, Rational::one()), (k, -Rational::one())])
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(e, _)| *e)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms().next().map(|(e, _)| *e)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: u32) -> Self {
        self.mul_term(k, &Rational::one())
    }

    /// Divides by `q^k`; `None` if some term has exponent below `k`.
    pub fn unshift(&self, k: u32) -> Option<Self> {
        if self.low_degree().is_some_and(|lo| lo < k) {
            return None;
        }
        Some(self.map_exponents(|e| e - k))
    }

    /// Drops every term of degree above `order`.
    pub fn truncate(&self, order: u32) -> Self {
        self.filter_map_terms(|e, c| (e <= order).then(|| (e, c.clone())))
    }

    /// Euclidean division: `self = quot·d + rem` with `deg rem < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let (d_deg, d_lead) = match d.leading() {
            Some((e, c)) => (*e, c.clone()),
            None => panic!("division by the zero polynomial"),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&e, c)) = rem.leading() {
            if e < d_deg {
                break;
            }
            let factor = c / &d_lead;
            let shift = e - d_deg;
            rem -= &d.mul_term(shift, &factor);
            quot.add_term(shift, factor);
        }
        (quot, rem)
    }

    /// Substitutes `q ← c·q^e`.
    pub fn substitute_monomial(&self, c: &Rational, e: u32) -> Self {
        Self::from_terms(self.terms().map(|(k, v)| {
            let mut coeff = v.clone();
            for _ in 0..*k {
                coeff *= c;
            }
            (k * e, coeff)
        }))
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut last = self.degree().unwrap_or(0);
        for (e, c) in self.terms().rev() {
            for _ in *e..last {
                acc *= x;
            }
            acc += c;
            last = *e;
        }
        for _ in 0..last {
            acc *= x;
        }
        acc
    }

    /// `q`-coefficients as a dense vector `c_0..c_deg`.
    pub fn dense(&self) -> Vec<Rational> {
        let len = self.degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![Rational::zero(); len];
        for (e, c) in self.terms() {
            out[*e as usize] = c.clone();
        }
        out
    }

    pub fn from_dense(coeffs: &[Rational]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as u32, c.clone())))
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as u32, rat(*c))))
    }
}

/// The q-Pochhammer product `(1-q)(1-q^2)···(1-q^a)`; `1` when `a = 0`.
pub fn qpochhammer(a: u32) -> QPoly {
    (1..=a).fold(QPoly::one(), |acc, i| &acc * &QPoly::one_minus_q_pow(i))
}
