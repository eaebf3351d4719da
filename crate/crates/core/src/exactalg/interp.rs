//! Polynomials in `(N, q)` where `N` stands for `q^n`, exact interpolation in
//! `N` over the field of rational functions of `q`, and trial division of
//! numerators by `(N - q^j)`.

use std::collections::BTreeMap;

use num_traits::One;

use super::poly::{Poly, Rational};
use super::ratfunc::NRational;
use super::univariate::QPoly;
use crate::error::{Error, Result};

/// Polynomial in `(N, q)`; exponents are `[deg_N, deg_q]`.
pub type NPoly2 = Poly<[u32; 2]>;

impl Poly<[u32; 2]> {
    /// The variable `N`.
    pub fn var_n() -> Self {
        Self::term([1, 0])
    }

    /// `q^e` as a polynomial in `(N, q)`.
    pub fn q_pow_n2(e: u32) -> Self {
        Self::term([0, e])
    }

    /// `N - q^j`.
    pub fn n_minus_q_pow(j: u32) -> Self {
        &Self::var_n() - &Self::q_pow_n2(j)
    }

    pub fn from_qpoly(p: &QPoly) -> Self {
        p.map_exponents(|e| [0, e])
    }

    /// The polynomial in `q` if `N` does not occur.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        self.terms().all(|(e, _)| e[0] == 0).then(|| self.map_exponents(|e| e[1]))
    }

    pub fn n_degree(&self) -> Option<u32> {
        self.terms().map(|(e, _)| e[0]).max()
    }

    /// Groups by powers of `N`: `Σ_i p_i(q)·N^i`.
    pub fn n_coeffs(&self) -> BTreeMap<u32, QPoly> {
        let mut out: BTreeMap<u32, QPoly> = BTreeMap::new();
        for (e, c) in self.terms() {
            *out.entry(e[0]).or_default() += &QPoly::monomial(e[1], c.clone());
        }
        out
    }

    pub fn from_n_coeffs<'a>(coeffs: impl IntoIterator<Item = (u32, &'a QPoly)>) -> Self {
        let mut out = Self::zero();
        for (i, p) in coeffs {
            out += &p.map_exponents(|e| [i, e]);
        }
        out
    }

    /// Substitutes `N ← q^n`.
    pub fn eval_n_pow(&self, n: u32) -> QPoly {
        self.map_exponents(|[i, j]| j + n * i)
    }

    /// Substitutes `N ← N·q^k` (k may be negative) and multiplies by `q^s`,
    /// with `s ≥ 0` the least shift leaving all exponents nonnegative.
    /// Returns the polynomial and `s`.
    pub fn scale_n(&self, k: i64) -> (Self, u32) {
        let shifted: Vec<([u32; 2], i64, Rational)> =
            self.terms().map(|(e, c)| (*e, e[1] as i64 + k * e[0] as i64, c.clone())).collect();
        let s = shifted.iter().map(|(_, qe, _)| -qe).max().unwrap_or(0).max(0);
        let p = Self::from_terms(shifted.into_iter().map(|(e, qe, c)| ([e[0], (qe + s) as u32], c)));
        (p, s as u32)
    }

    /// Synthetic division by `(N - q^j)`; `None` unless exact.
    pub fn divide_n_minus_q_pow(&self, j: u32) -> Option<Self> {
        let coeffs = self.n_coeffs();
        let deg = *coeffs.keys().next_back()?;
        let root = QPoly::q_pow(j);
        // b_{i-1} = p_i + q^j·b_i, descending from b_{deg-1} = p_deg.
        let mut quotient: Vec<QPoly> = vec![QPoly::zero(); deg as usize];
        let mut carry = QPoly::zero();
        for i in (1..=deg).rev() {
            let p_i = coeffs.get(&i).cloned().unwrap_or_default();
            carry = &p_i + &(&root * &carry);
            quotient[i as usize - 1] = carry.clone();
        }
        let p_0 = coeffs.get(&0).cloned().unwrap_or_default();
        let remainder = &p_0 + &(&root * &carry);
        if !remainder.is_zero() {
            return None;
        }
        Some(Self::from_n_coeffs(quotient.iter().enumerate().map(|(i, p)| (i as u32, p))))
    }
}

impl NRational {
    /// Numerator and denominator at `N = q^n`.
    pub fn eval_n_pow(&self, n: u32) -> (QPoly, QPoly) {
        (self.num().eval_n_pow(n), self.den().eval_n_pow(n))
    }

    /// True iff the function is defined at `N = q^n` and equals `value` there.
    pub fn matches_at(&self, n: u32, value: &QPoly) -> bool {
        let (num, den) = self.eval_n_pow(n);
        !den.is_zero() && (&den * value) == num
    }

    /// The function at `N = q^n` as a polynomial in `q`, if it is one.
    pub fn value_at(&self, n: u32) -> Option<QPoly> {
        let (num, den) = self.eval_n_pow(n);
        if den.is_zero() {
            return None;
        }
        num.div_exact(&den)
    }

    /// Substitutes `N ← N·q^k`.
    pub fn scale_n(&self, k: i64) -> NRational {
        let (num, s_num) = self.num().scale_n(k);
        let (den, s_den) = self.den().scale_n(k);
        NRational::new(num.mul_term([0, s_den], &Rational::one()), den.mul_term([0, s_num], &Rational::one()))
            .expect("a nonzero denominator stays nonzero under N -> N*q^k")
    }

    pub fn from_qpoly(p: &QPoly) -> NRational {
        NRational::from_poly(NPoly2::from_qpoly(p))
    }
}

/// Denominator `±q^shift·Π(1-q^k)^m` kept in factored form.
#[derive(Default, Clone)]
struct FactoredQ {
    negative: bool,
    shift: u32,
    factors: BTreeMap<u32, u32>,
}

impl FactoredQ {
    fn expand(&self) -> QPoly {
        let mut p = QPoly::q_pow(self.shift);
        for (k, m) in &self.factors {
            for _ in 0..*m {
                p = &p * &QPoly::one_minus_q_pow(*k);
            }
        }
        if self.negative {
            -p
        } else {
            p
        }
    }
}

fn node_exponent(node: &QPoly) -> Result<u32> {
    match node.terms().next() {
        Some((e, c)) if node.len() == 1 && c.is_one() => Ok(*e),
        _ => Err(Error::NodeNotQPower(node.to_string())),
    }
}

/// Fits the unique polynomial of the given degree in `N` through
/// `(node, value)` pairs, with coefficients rational functions of `q`.
///
/// Nodes must be powers of `q`. Uses the first `degree + 1` points. The
/// Lagrange basis denominators `Π(q^{e_i} - q^{e_j})` factor as
/// `±q^s·Π(1-q^k)`, so the result is cleared over a common multiple of
/// them without any gcd computation.
pub fn interpolate_in_n(points: &[(QPoly, QPoly)], degree: usize) -> Result<NRational> {
    let needed = degree + 1;
    if points.len() < needed {
        return Err(Error::TooFewPoints { degree, needed, got: points.len() });
    }
    let exps = points.iter().map(|(node, _)| node_exponent(node)).collect::<Result<Vec<u32>>>()?;
    let mut seen = std::collections::BTreeSet::new();
    for e in &exps {
        if !seen.insert(*e) {
            return Err(Error::DuplicateNode(*e));
        }
    }
    let exps = &exps[..needed];
    let dens: Vec<FactoredQ> = (0..needed)
        .map(|i| {
            let mut f = FactoredQ::default();
            for j in (0..needed).filter(|&j| j != i) {
                let (ei, ej) = (exps[i], exps[j]);
                // q^ei - q^ej = q^min·(1 - q^|d|), negated when ei > ej.
                f.shift += ei.min(ej);
                f.negative ^= ei > ej;
                *f.factors.entry(ei.abs_diff(ej)).or_default() += 1;
            }
            f
        })
        .collect();
    let mut common = FactoredQ {
        shift: dens.iter().map(|d| d.shift).max().unwrap_or(0),
        ..FactoredQ::default()
    };
    for d in &dens {
        for (k, m) in &d.factors {
            let slot = common.factors.entry(*k).or_default();
            *slot = (*slot).max(*m);
        }
    }
    let mut num = NPoly2::zero();
    for (i, d) in dens.iter().enumerate() {
        let cofactor = FactoredQ {
            negative: d.negative,
            shift: common.shift - d.shift,
            factors: common.factors.iter().map(|(k, m)| (*k, m - d.factors.get(k).copied().unwrap_or(0))).collect(),
        };
        let mut term = NPoly2::from_qpoly(&(&points[i].1 * &cofactor.expand()));
        for j in (0..needed).filter(|&j| j != i) {
            term = &term * &NPoly2::n_minus_q_pow(exps[j]);
        }
        num += &term;
    }
    NRational::new(num, NPoly2::from_qpoly(&common.expand()))
}

/// Strips factors `(N - q^j)`, `j = 0..=j_max`, from the numerator while the
/// division is exact. Returns the extracted `j` values (sorted, with
/// multiplicity) and the leftover function.
pub fn trial_divide_numerator(r: &NRational, j_max: u32) -> (Vec<u32>, NRational) {
    let mut num = r.num().clone();
    let mut roots = Vec::new();
    if !num.is_zero() {
        for j in 0..=j_max {
            while num.n_degree().is_some_and(|d| d > 0) {
                match num.divide_n_minus_q_pow(j) {
                    Some(quot) => {
                        num = quot;
                        roots.push(j);
                    }
                    None => break,
                }
            }
        }
    }
    let rest = NRational::new(num, r.den().clone()).expect("denominator unchanged");
    (roots, rest)
}

/// Multiplies `(N - q^j)` back in for every root.
pub fn multiply_roots(roots: &[u32], r: &NRational) -> NRational {
    let factor = roots.iter().fold(NPoly2::one(), |acc, j| &acc * &NPoly2::n_minus_q_pow(*j));
    r.mul_poly(&factor)
}

/// Expanded `Π_j (N - q^j)` as an `NRational` over `den`.
pub fn root_product_over(roots: impl IntoIterator<Item = u32>, den: &QPoly) -> Result<NRational> {
    let num = roots.into_iter().fold(NPoly2::one(), |acc, j| &acc * &NPoly2::n_minus_q_pow(j));
    NRational::new(num, NPoly2::from_qpoly(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratfunc::rational_equal;
    use proptest::prelude::*;

    fn q(e: u32) -> QPoly {
        QPoly::q_pow(e)
    }

    fn c1_paper() -> NRational {
        // (N - q) / (q(1 - q))
        root_product_over([1], &(&q(1) * &QPoly::one_minus_q_pow(1))).unwrap()
    }

    fn c2_paper() -> NRational {
        // (N - q^2)(N - q^3) / (q^3 (1 + q)(1 - q)^2)
        let den = &(&q(3) * &QPoly::from_ints(&[1, 1])) * &QPoly::one_minus_q_pow(1).pow(2);
        root_product_over([2, 3], &den).unwrap()
    }

    #[test]
    fn linear_fit_of_x_coefficient() {
        let pts = vec![(q(2), QPoly::from_int(-1)), (q(3), QPoly::from_ints(&[-1, -1]))];
        let r = interpolate_in_n(&pts, 1).unwrap();
        assert!(rational_equal(&r, &c1_paper()));
    }

    #[test]
    fn constant_fit() {
        let r = interpolate_in_n(&[(q(1), QPoly::from_int(5))], 0).unwrap();
        assert!(rational_equal(&r, &NRational::from_qpoly(&QPoly::from_int(5))));
    }

    #[test]
    fn quadratic_fit_of_x2_coefficient() {
        let pts = vec![
            (q(4), q(2)),
            (q(5), QPoly::from_ints(&[0, 0, 1, 1, 1])),
            (q(6), QPoly::from_ints(&[0, 0, 1, 1, 2, 1, 1])),
        ];
        let r = interpolate_in_n(&pts, 2).unwrap();
        assert!(rational_equal(&r, &c2_paper()));
    }

    #[test]
    fn interpolation_errors() {
        let dup = vec![(q(2), q(0)), (q(2), q(1))];
        assert_eq!(interpolate_in_n(&dup, 1).unwrap_err(), Error::DuplicateNode(2));
        let few = vec![(q(2), q(0))];
        assert!(matches!(interpolate_in_n(&few, 1), Err(Error::TooFewPoints { .. })));
        let bad = vec![(QPoly::from_ints(&[0, 2]), q(0))];
        assert!(matches!(interpolate_in_n(&bad, 0), Err(Error::NodeNotQPower(_))));
    }

    #[test]
    fn trial_division_examples() {
        let (roots, rest) = trial_divide_numerator(&c1_paper(), 4);
        assert_eq!(roots, vec![1]);
        let expect = NRational::new(NPoly2::one(), NPoly2::from_qpoly(&(&q(1) * &QPoly::one_minus_q_pow(1)))).unwrap();
        assert!(rational_equal(&rest, &expect));

        let (roots, rest) = trial_divide_numerator(&NRational::one(), 7);
        assert!(roots.is_empty());
        assert!(rational_equal(&rest, &NRational::one()));

        let (roots, _) = trial_divide_numerator(&c2_paper(), 6);
        assert_eq!(roots, vec![2, 3]);
    }

    #[test]
    fn repeated_roots_are_extracted_with_multiplicity() {
        let r = root_product_over([3, 3, 1], &QPoly::one()).unwrap();
        let (roots, rest) = trial_divide_numerator(&r, 5);
        assert_eq!(roots, vec![1, 3, 3]);
        assert!(rational_equal(&rest, &NRational::one()));
    }

    #[test]
    fn scale_n_clears_negative_powers() {
        // C(N/q) for C = N - q is N/q - q = (N - q^2)/q.
        let c = NRational::from_poly(NPoly2::n_minus_q_pow(1));
        let shifted = c.scale_n(-1);
        let expect = NRational::new(NPoly2::n_minus_q_pow(2), NPoly2::q_pow_n2(1)).unwrap();
        assert!(rational_equal(&shifted, &expect));
    }

    fn small_qpoly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-3i64..=3, 0..5).prop_map(|v| QPoly::from_ints(&v))
    }

    proptest! {
        #[test]
        fn interpolant_reproduces_nodes(
            start in 0u32..6,
            gaps in prop::collection::vec(1u32..4, 0..4),
            values in prop::collection::vec(small_qpoly(), 5),
        ) {
            let mut exps = vec![start];
            for g in &gaps {
                exps.push(exps.last().unwrap() + g);
            }
            let pts: Vec<(QPoly, QPoly)> =
                exps.iter().zip(values.iter()).map(|(e, v)| (q(*e), v.clone())).collect();
            let r = interpolate_in_n(&pts, pts.len() - 1).unwrap();
            for (e, v) in exps.iter().zip(values.iter()) {
                prop_assert!(r.matches_at(*e, v));
            }
        }

        #[test]
        fn trial_division_round_trips(
            roots in prop::collection::vec(0u32..6, 0..4),
            extra in small_qpoly(),
            den_k in 1u32..4,
        ) {
            let den = &QPoly::q_pow(1) * &QPoly::one_minus_q_pow(den_k);
            let base = NRational::new(
                &NPoly2::from_qpoly(&(&extra + &QPoly::from_int(7))) + &NPoly2::var_n().pow(0),
                NPoly2::from_qpoly(&den),
            ).unwrap();
            let r = multiply_roots(&roots, &base);
            let (found, rest) = trial_divide_numerator(&r, 6);
            prop_assert!(rational_equal(&multiply_roots(&found, &rest), &r));
        }
    }
}
