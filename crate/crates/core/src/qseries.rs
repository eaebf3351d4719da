//! The `n → ∞` limit of `Q_n` at finite `q`-order, its specializations in
//! `X`, Rogers–Ramanujan product sides, and brute-force composition counts.

use std::collections::BTreeSet;
use std::fmt::{Display, Write as _};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{QPoly, QSeries, Rational, XPoly, XQPoly};

/// `Σ_a (-1)^a X^a q^{a(a-1)} / (q;q)_a` through `q^order`.
///
/// Each `1/(q;q)_a` is expanded directly as a product of geometric series;
/// no series inversion is involved.
pub fn theorem1_truncated(order: u32) -> QSeries<XPoly> {
    let k = order as usize;
    let mut out: QSeries<XPoly> = QSeries::zero(order);
    // inv holds 1/(q;q)_a through q^order, updated in place as a grows.
    let mut inv: Vec<Rational> = vec![Rational::zero(); k + 1];
    inv[0] = Rational::one();
    let mut a: u32 = 0;
    loop {
        let shift = (a * a.saturating_sub(1)) as usize;
        if shift > k {
            break;
        }
        if a >= 1 {
            let step = a as usize;
            for i in step..=k {
                let prev = inv[i - step].clone();
                inv[i] += prev;
            }
        }
        let sign = if a.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        for (i, c) in inv.iter().enumerate().take(k - shift + 1) {
            if !c.is_zero() {
                let slot = out.coeff_mut((i + shift) as u32);
                *slot = &*slot + &XPoly::monomial(a, &sign * c);
            }
        }
        a += 1;
    }
    out
}

/// Substitutes `X ← c·q^e` and truncates at the original order.
pub fn substitute_x(s: &QSeries<XPoly>, c: &Rational, e: u32) -> QSeries<Rational> {
    let order = s.order();
    let mut out = QSeries::zero(order);
    for (i, coeff) in s.coeffs().iter().enumerate() {
        for (&j, x) in coeff.terms() {
            let Some(target) = (i as u64).checked_add(u64::from(e) * u64::from(j)) else { continue };
            if target <= u64::from(order) {
                let slot = out.coeff_mut(target as u32);
                *slot += x * num_traits::pow(c.clone(), j as usize);
            }
        }
    }
    out
}

/// The series of `X`-polynomial coefficients as an `XQPoly` (dropping the order).
pub fn series_to_xqpoly(s: &QSeries<XPoly>) -> XQPoly {
    let mut out = XQPoly::zero();
    for (i, coeff) in s.coeffs().iter().enumerate() {
        for (&j, x) in coeff.terms() {
            out = out.add(&XQPoly::from_coeff(j, QPoly::monomial(i as u32, x.clone())));
        }
    }
    out
}

/// `Π_{j≥1, j mod modulus ∈ residues} 1/(1 - q^j)` through `q^order`.
///
/// A residue equal to `modulus` stands for `0`.
pub fn rr_product_truncated(order: u32, residues: &BTreeSet<u32>, modulus: u32) -> Result<QSeries<Rational>> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if let Some(r) = residues.iter().find(|&&r| r == 0 || r > modulus) {
        return Err(Error::InvalidArgument(format!("residue {r} outside [1, {modulus}]")));
    }
    let classes: BTreeSet<u32> = residues.iter().map(|r| r % modulus).collect();
    let k = order as usize;
    let mut c = vec![Rational::zero(); k + 1];
    c[0] = Rational::one();
    for j in 1..=k {
        if classes.contains(&(j as u32 % modulus)) {
            for i in j..=k {
                let prev = c[i - j].clone();
                c[i] += prev;
            }
        }
    }
    QSeries::from_coeffs(c)
}

/// Compositions `(p_1, …, p_k)` of `n` with `p_i - p_{i+1} >= r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RPartitionSpec {
    pub n: u32,
    pub r: i64,
}

impl RPartitionSpec {
    pub fn new(n: u32, r: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        Ok(RPartitionSpec { n, r })
    }
}

struct Counter {
    r: i64,
    memo: Vec<Vec<Option<BigUint>>>,
}

impl Counter {
    /// Completions of a composition with `remaining` left to place after a part `last`.
    fn ways(&mut self, remaining: usize, last: usize) -> BigUint {
        if remaining == 0 {
            return BigUint::one();
        }
        if let Some(v) = &self.memo[remaining][last] {
            return v.clone();
        }
        let cap = last as i64 - self.r;
        let top = cap.min(remaining as i64);
        let mut total = BigUint::zero();
        for p in 1..=top.max(0) as usize {
            total += self.ways(remaining - p, p);
        }
        self.memo[remaining][last] = Some(total.clone());
        total
    }
}

/// Number of compositions of `spec.n` with every consecutive drop at least `spec.r`.
pub fn count_r_partitions(spec: RPartitionSpec) -> BigUint {
    let n = spec.n as usize;
    let mut c = Counter { r: spec.r, memo: vec![vec![None; n + 1]; n + 1] };
    (1..=n).map(|p| c.ways(n - p, p)).sum()
}

/// `[count_r_partitions(n, r) for n = 1..=count]`.
pub fn sequence_rpartitions(r: i64, count: u32) -> Result<Vec<BigUint>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    (1..=count).map(|n| Ok(count_r_partitions(RPartitionSpec::new(n, r)?))).collect()
}

/// b-file text: `index value` per line starting at `offset`, newline-terminated.
pub fn format_bfile<T: Display>(values: &[T], offset: i64) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{} {}", offset + i as i64, v).expect("writing to a String");
    }
    out
}

/// The `X = -1` and `X = -q^2` specializations of the limit, next to the
/// product `Π 1/(1-q^j)` over `j ≡ ±2 (mod 5)`.
#[derive(Clone, Debug)]
pub struct SpecializationReport {
    pub order: u32,
    pub x_minus_one: QSeries<Rational>,
    pub x_minus_q2: QSeries<Rational>,
    pub second_product: QSeries<Rational>,
}

impl SpecializationReport {
    /// Whether the `X = -q^2` series equals the `±2 (mod 5)` product through the order.
    pub fn x_minus_q2_matches_product(&self) -> bool {
        self.x_minus_q2 == self.second_product
    }
}

pub fn specialization_report(order: u32) -> SpecializationReport {
    let t = theorem1_truncated(order);
    let minus = -Rational::one();
    SpecializationReport {
        order,
        x_minus_one: substitute_x(&t, &minus, 0),
        x_minus_q2: substitute_x(&t, &minus, 2),
        second_product: rr_product_truncated(order, &BTreeSet::from([2, 3]), 5).expect("valid residues"),
    }
}
