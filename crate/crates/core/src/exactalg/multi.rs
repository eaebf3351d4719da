//! Polynomials in `(q, X, N, A)`, with `N = q^n` and `A = q^a`.

use num_traits::One;

use super::interp::NPoly2;
use super::poly::{Poly, Rational};
use super::ratfunc::{MultiRational, NRational};
use super::univariate::QPoly;
use super::xq::XQPoly;

/// Polynomial in `(q, X, N, A)`; exponents are `[q, X, N, A]`.
pub type MultiPoly = Poly<[u32; 4]>;

/// Variable positions in a [`MultiPoly`] exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Q = 0,
    X = 1,
    N = 2,
    A = 3,
}

impl Poly<[u32; 4]> {
    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut exp = [0; 4];
        exp[v as usize] = e;
        Self::term(exp)
    }

    /// Variables with a positive exponent somewhere.
    pub fn uses(&self, v: Var) -> bool {
        self.terms().any(|(e, _)| e[v as usize] > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms().map(|(e, _)| e[v as usize]).max().unwrap_or(0)
    }

    pub fn from_qpoly_multi(p: &QPoly) -> Self {
        p.map_exponents(|e| [e, 0, 0, 0])
    }

    pub fn from_xqpoly(p: &XQPoly) -> Self {
        let mut out = Self::zero();
        for (a, c) in p.coeffs() {
            out += &c.map_exponents(|e| [e, *a, 0, 0]);
        }
        out
    }

    pub fn from_npoly2(p: &NPoly2) -> Self {
        p.map_exponents(|[n, q]| [q, 0, n, 0])
    }

    pub fn to_qpoly(&self) -> Option<QPoly> {
        (!self.uses(Var::X) && !self.uses(Var::N) && !self.uses(Var::A)).then(|| self.map_exponents(|e| e[0]))
    }

    pub fn to_xqpoly(&self) -> Option<XQPoly> {
        if self.uses(Var::N) || self.uses(Var::A) {
            return None;
        }
        Some(XQPoly::from_coeffs(self.terms().map(|(e, c)| (e[1], QPoly::monomial(e[0], c.clone())))))
    }

    pub fn to_npoly2(&self) -> Option<NPoly2> {
        (!self.uses(Var::X) && !self.uses(Var::A)).then(|| self.map_exponents(|e| [e[2], e[0]]))
    }

    /// Groups by powers of `v`.
    pub fn coeffs_in(&self, v: Var) -> std::collections::BTreeMap<u32, MultiPoly> {
        let mut out: std::collections::BTreeMap<u32, MultiPoly> = Default::default();
        for (e, c) in self.terms() {
            let mut rest = *e;
            rest[v as usize] = 0;
            *out.entry(e[v as usize]).or_default() += &MultiPoly::monomial(rest, c.clone());
        }
        out
    }

    /// Substitutes `v ← v·q^k` (k ≥ 0).
    pub fn scale_var(&self, v: Var, k: u32) -> Self {
        self.map_exponents(|mut e| {
            e[0] += k * e[v as usize];
            e
        })
    }

    /// Substitutes `v ← v·q^k` for any integer `k`, multiplied through by
    /// the least `q^s` (returned) that keeps exponents nonnegative.
    pub fn scale_var_laurent(&self, v: Var, k: i64) -> (Self, u32) {
        let shifted: Vec<([u32; 4], i64, Rational)> = self
            .terms()
            .map(|(e, c)| (*e, e[0] as i64 + k * e[v as usize] as i64, c.clone()))
            .collect();
        let s = shifted.iter().map(|(_, qe, _)| -qe).max().unwrap_or(0).max(0);
        let p = Self::from_terms(shifted.into_iter().map(|(mut e, qe, c)| {
            e[0] = (qe + s) as u32;
            (e, c)
        }));
        (p, s as u32)
    }
}

impl MultiRational {
    /// Substitutes `v ← v·q^k` in numerator and denominator.
    pub fn scale_var(&self, v: Var, k: i64) -> MultiRational {
        let (num, s_num) = self.num().scale_var_laurent(v, k);
        let (den, s_den) = self.den().scale_var_laurent(v, k);
        let q = |s: u32| MultiPoly::var_pow(Var::Q, s);
        MultiRational::new(&num * &q(s_den), &den * &q(s_num)).expect("substitution keeps the denominator nonzero")
    }

    pub fn from_nrational(r: &NRational) -> MultiRational {
        r.map_polys(MultiPoly::from_npoly2).expect("denominator nonzero")
    }

    /// Back to `(N, q)` if only `q` and `N` occur.
    pub fn to_nrational(&self) -> Option<NRational> {
        NRational::new(self.num().to_npoly2()?, self.den().to_npoly2()?).ok()
    }

    /// Collapses to a polynomial if the denominator is a nonzero constant.
    pub fn to_poly_if_constant_den(&self) -> Option<MultiPoly> {
        if !self.den().is_constant() {
            return None;
        }
        let c = self.den().constant_term();
        Some(self.num().scale(&(Rational::one() / c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratfunc::rational_equal;

    #[test]
    fn laurent_scaling_of_a() {
        // A -> A/q on (A - q N) / A^2 gives (A/q - qN)/(A^2/q^2) = q(A - q^2 N)/A^2.
        let a = MultiPoly::var(Var::A);
        let qn = &MultiPoly::var(Var::Q) * &MultiPoly::var(Var::N);
        let r = MultiRational::new(&a - &qn, a.pow(2)).unwrap();
        let got = r.scale_var(Var::A, -1);
        let q2n = &MultiPoly::var_pow(Var::Q, 2) * &MultiPoly::var(Var::N);
        let expect = MultiRational::new(&MultiPoly::var(Var::Q) * &(&a - &q2n), a.pow(2)).unwrap();
        assert!(rational_equal(&got, &expect));
    }

    #[test]
    fn conversions_round_trip() {
        let x = XQPoly::from_coeffs([(0, QPoly::one()), (2, QPoly::q_pow(3))]);
        assert_eq!(MultiPoly::from_xqpoly(&x).to_xqpoly(), Some(x));
        let n = NPoly2::n_minus_q_pow(4);
        assert_eq!(MultiPoly::from_npoly2(&n).to_npoly2(), Some(n));
    }
}
