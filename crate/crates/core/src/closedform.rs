//! Gaussian polynomials, the finite closed form of `Q_n`, and the coefficient
//! of `X^a` as a rational function of `N = q^n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{qpochhammer, root_product_over, NRational, QPoly, Rational, XQPoly};

/// Parameters of `GP(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianParams {
    pub m: i64,
    pub n: u32,
}

impl GaussianParams {
    pub fn value(&self) -> Result<QPoly> {
        gaussian_poly(self.m, self.n)
    }
}

/// `GP(m, n) = Π_{i=1..n} (1 - q^{m+i}) / (1 - q^i)`.
///
/// Built one factor at a time: after step `i` the partial product is
/// `GP(m, i)`, so every division by `1 - q^i` is exact and checked. `GP(m, n) = 0` for
/// `-n <= m <= -1`; smaller `m` is rejected.
pub fn gaussian_poly(m: i64, n: u32) -> Result<QPoly> {
    if m < -i64::from(n) {
        return Err(Error::OutOfRange(format!("GP({m}, {n}) needs m >= -n")));
    }
    if m < 0 {
        return Ok(QPoly::zero());
    }
    let m = usize::try_from(m).map_err(|_| Error::OutOfRange(format!("GP({m}, {n}): m too large")))?;
    // Dense integer coefficients; v has length deg + 1.
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..=n as usize {
        let s = m + i;
        v.resize(v.len() + s, BigInt::zero());
        for k in (s..v.len()).rev() {
            let t = v[k - s].clone();
            v[k] -= t;
        }
        let qlen = v.len() - i;
        let mut quot: Vec<BigInt> = Vec::with_capacity(qlen);
        for k in 0..qlen {
            let c = if k >= i { &v[k] + &quot[k - i] } else { v[k].clone() };
            quot.push(c);
        }
        for k in qlen..v.len() {
            let back = if k >= i && k - i < qlen { -&quot[k - i] } else { BigInt::zero() };
            if v[k] != back {
                return Err(Error::Internal(format!("GP({m}, {i}): division by 1 - q^{i} left a remainder")));
            }
        }
        v = quot;
    }
    Ok(QPoly::from_terms(v.into_iter().enumerate().map(|(k, c)| (k as u32, Rational::from_integer(c)))))
}

/// Coefficient of `X^a` in the closed form: `(-1)^a q^{a(a-1)} GP(n-2a, a)`.
pub fn closed_form_coefficient(n: u32, a: u32) -> Result<QPoly> {
    let gp = gaussian_poly(i64::from(n) - 2 * i64::from(a), a)?;
    let sign = if a.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Ok(gp.mul_term(a * a.saturating_sub(1), &sign))
}

/// `Σ_{a=0..⌊n/2⌋} (-1)^a X^a q^{a(a-1)} GP(n-2a, a)`.
pub fn theorem2_value(n: u32) -> Result<XQPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut out = XQPoly::zero();
    for a in 0..=n / 2 {
        out = out.add(&XQPoly::from_coeff(a, closed_form_coefficient(n, a)?));
    }
    Ok(out)
}

/// `C_a(N) = (N - q^a)(N - q^{a+1})⋯(N - q^{2a-1}) / (q^{a(a+1)/2} (q;q)_a)`, kept factored.
///
/// The sign `(-1)^a` of the coefficient is carried by the numerator: at
/// `N = q^n` each of the `a` factors is `-q^j (1 - q^{n-j})`.
pub fn coefficient_in_n(a: u32) -> NRational {
    let den = qpochhammer(a).shift(a * (a + 1) / 2);
    root_product_over(a..2 * a, &den).expect("q-Pochhammer times a q-power is nonzero")
}

/// Whether `C_a(q^n)` equals `(-1)^a q^{a(a-1)} GP(n-2a, a)` exactly.
pub fn coefficient_consistency(a: u32, n: u32) -> Result<bool> {
    if n < 2 * a || n == 0 {
        return Err(Error::InvalidArgument(format!("coefficient_consistency needs 1 <= 2a <= n, got a={a}, n={n}")));
    }
    Ok(coefficient_in_n(a).matches_at(n, &closed_form_coefficient(n, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational_equal;
    use crate::exactalg::text::{parse_nrational, parse_qpoly};
    use crate::lehmer::det_prefix;

    fn qp(s: &str) -> QPoly {
        parse_qpoly(s).unwrap()
    }

    /// Dense integer table of GP(m, n) for m, n <= size by the q-Pascal rule
    /// GP(m, n) = GP(m, n-1) + q^n GP(m-1, n) (the mirror of the rule tested below).
    fn pascal_table(size: usize) -> Vec<Vec<Vec<i64>>> {
        let mut t = vec![vec![Vec::new(); size + 1]; size + 1];
        for m in 0..=size {
            for n in 0..=size {
                t[m][n] = if m == 0 || n == 0 {
                    vec![1]
                } else {
                    let mut v = vec![0i64; m * n + 1];
                    for (k, c) in t[m][n - 1].iter().enumerate() {
                        v[k] += c;
                    }
                    for (k, c) in t[m - 1][n].iter().enumerate() {
                        v[k + n] += c;
                    }
                    v
                };
            }
        }
        t
    }

    #[test]
    fn examples() {
        assert!(gaussian_poly(7, 0).unwrap().is_one());
        assert_eq!(gaussian_poly(2, 1).unwrap(), qp("1 + q + q^2"));
        assert_eq!(gaussian_poly(2, 2).unwrap(), qp("1 + q + 2*q^2 + q^3 + q^4"));
        assert!(gaussian_poly(-1, 1).unwrap().is_zero());
        assert!(gaussian_poly(-3, 3).unwrap().is_zero());
        assert!(matches!(gaussian_poly(-4, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn matches_independent_table() {
        let t = pascal_table(20);
        for m in 0..=20u32 {
            for n in 0..=20u32 {
                let expect = QPoly::from_ints(&t[m as usize][n as usize]);
                assert_eq!(gaussian_poly(m.into(), n).unwrap(), expect, "GP({m},{n})");
            }
        }
    }

    #[test]
    fn q_pascal_symmetry_and_palindrome() {
        for m in 0..=20i64 {
            for n in 0..=20u32 {
                let g = gaussian_poly(m, n).unwrap();
                assert_eq!(g, gaussian_poly(n.into(), m as u32).unwrap());
                if m >= 1 && n >= 1 {
                    let rhs = &gaussian_poly(m - 1, n).unwrap() + &gaussian_poly(m, n - 1).unwrap().shift(m as u32);
                    assert_eq!(g, rhs, "q-Pascal at ({m},{n})");
                }
                if m <= 15 && n <= 15 {
                    let top = m as u32 * n;
                    assert_eq!(g.degree(), Some(top));
                    for (&k, c) in g.terms() {
                        assert_eq!(&g.coeff(&(top - k)), c);
                        assert!(c.is_integer() && *c > Rational::from_integer(0.into()));
                    }
                }
            }
        }
    }

    #[test]
    fn theorem2_examples() {
        assert_eq!(theorem2_value(2).unwrap().to_string(), "1 - X");
        assert_eq!(theorem2_value(6).unwrap().coeff(2), qp("q^2+q^3+2*q^4+q^5+q^6"));
        assert_eq!(
            theorem2_value(10).unwrap().coeff(2),
            qp("q^2+q^3+2*q^4+2*q^5+3*q^6+3*q^7+4*q^8+3*q^9+3*q^10+2*q^11+2*q^12+q^13+q^14")
        );
        assert!(theorem2_value(0).is_err());
    }

    #[test]
    fn theorem2_matches_recurrence_to_60() {
        let prefix = det_prefix(60).unwrap();
        for n in 1..=60u32 {
            assert_eq!(theorem2_value(n).unwrap(), prefix[n as usize - 1], "n={n}");
        }
    }

    #[test]
    fn coefficient_in_n_examples() {
        assert!(coefficient_in_n(0).to_poly().unwrap().is_one());
        assert!(rational_equal(&coefficient_in_n(1), &parse_nrational("(N-q)/(q*(1-q))").unwrap()));
        let third = parse_nrational("-(N-q^3)*(N-q^4)*(N-q^5)/(q^6*(1+q)*(q^2+q+1)*(q-1)^3)").unwrap();
        assert!(rational_equal(&coefficient_in_n(3), &third));
        assert!(!rational_equal(&coefficient_in_n(3), &third.neg()));
    }

    #[test]
    fn coefficient_consistency_range() {
        assert!(coefficient_consistency(0, 1).unwrap());
        assert!(coefficient_consistency(1, 8).unwrap());
        assert_eq!(closed_form_coefficient(10, 5).unwrap(), qp("-q^20"));
        assert!(coefficient_consistency(5, 10).unwrap());
        for a in 0..=8u32 {
            for n in (2 * a).max(1)..=2 * a + 12 {
                assert!(coefficient_consistency(a, n).unwrap(), "a={a} n={n}");
            }
        }
        assert!(coefficient_consistency(3, 5).is_err());
    }
}
