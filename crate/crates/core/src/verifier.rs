//! Checks that turn the conjectured closed form into a proof at desk scale.
//!
//! * [`check_recurrence_numeric`] replays the three-term recurrence and the
//!   initial conditions on concrete `Q_n`.
//! * [`check_coefficient_identity`] proves the recurrence for the X^a
//!   coefficient as an identity of rational functions in `N = q^n`.
//! * [`check_certificate`] and [`solve_certificate`] handle the telescoping
//!   form with summand `F(n, a) = (-1)^a X^a q^{a(a-1)} GP(n-2a, a)`, writing
//!   `A = q^a` so every shift ratio is rational in `(q, X, N, A)`.

use serde_json::{json, Value};

use crate::closedform::coefficient_in_n;
use crate::error::{Error, Result};
use crate::exactalg::{rational_equal, MultiPoly, MultiRational, NPoly2, NRational, Rational, Var, XQPoly};

fn var(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

fn qp(e: u32) -> MultiPoly {
    MultiPoly::var_pow(Var::Q, e)
}

fn int(k: i64) -> MultiPoly {
    MultiPoly::constant(Rational::from_integer(k.into()))
}

/// `N = q^n`, `A = q^a` into a polynomial in `q`, `X`.
fn substitute_na(p: &MultiPoly, n: u32, a: u32) -> XQPoly {
    p.map_exponents(|e| [e[0] + n * e[2] + a * e[3], e[1], 0, 0])
        .to_xqpoly()
        .expect("only q and X remain")
}

/// The operator `c2·S² + c1·S + c0`, `S` the shift `n ↦ n+1` (`N ↦ qN`).
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub c2: MultiPoly,
    pub c1: MultiPoly,
    pub c0: MultiPoly,
}

impl Recurrence {
    pub fn new(c2: MultiPoly, c1: MultiPoly, c0: MultiPoly) -> Result<Self> {
        if c2.is_zero() {
            return Err(Error::InvalidArgument("leading coefficient c2 must be nonzero".into()));
        }
        if [&c2, &c1, &c0].iter().any(|c| c.uses(Var::A)) {
            return Err(Error::InvalidArgument("recurrence coefficients may use only q, X, N".into()));
        }
        Ok(Recurrence { c2, c1, c0 })
    }

    /// `S² - S + X·N`.
    pub fn lehmer() -> Self {
        Recurrence { c2: int(1), c1: int(-1), c0: &var(Var::X) * &var(Var::N) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Recurrence { c2: self.c2.scale(c), c1: self.c1.scale(c), c0: self.c0.scale(c) }
    }

    fn coefficients(&self) -> [&MultiPoly; 3] {
        [&self.c0, &self.c1, &self.c2]
    }
}

/// `R(q, X, N, A)` with `G(n, a) = R·F(n, a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub value: MultiRational,
}

impl Certificate {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        Ok(Certificate { value: MultiRational::new(num, den)? })
    }

    pub fn zero() -> Self {
        Certificate { value: MultiRational::zero() }
    }

    /// Parses text such as `X*q^n`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Certificate { value: crate::exactalg::text::parse_multi_rational(s)? })
    }
}

/// Which difference in `a` the certificate telescopes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `Σ c_i F(n+i, a) = G(n, a+1) - G(n, a)`.
    Forward,
    /// `Σ c_i F(n+i, a) = G(n, a) - G(n, a-1)`.
    Backward,
}

/// Shift ratios of `F` as `(numerator, denominator)` polynomials.
pub struct ShiftRatios {
    /// `F(n+1, a) / F(n, a) = A(A - qN) / (A² - qN)`.
    pub r1: (MultiPoly, MultiPoly),
    /// `F(n+2, a) / F(n, a)`.
    pub r2: (MultiPoly, MultiPoly),
    /// `F(n, a+1) / F(n, a) = -X(qA² - N)(A² - N) / (qA(A - N)(1 - qA))`.
    pub ra: (MultiPoly, MultiPoly),
}

pub fn shift_ratios() -> ShiftRatios {
    let (a, n, x) = (var(Var::A), var(Var::N), var(Var::X));
    let a2 = &a * &a;
    let qn = &qp(1) * &n;
    let q2n = &qp(2) * &n;
    let r1 = (&a * &(&a - &qn), &a2 - &qn);
    let r2 = (&(&a2 * &(&a - &qn)) * &(&a - &q2n), &(&a2 - &qn) * &(&a2 - &q2n));
    let ra_num = &(&(-&x) * &(&(&qp(1) * &a2) - &n)) * &(&a2 - &n);
    let ra_den = &(&(&qp(1) * &a) * &(&a - &n)) * &(&int(1) - &(&qp(1) * &a));
    ShiftRatios { r1, r2, ra: (ra_num, ra_den) }
}

/// `(c2·r2 + c1·r1 + c0)` over the common denominator `(A² - qN)(A² - q²N)`.
fn operator_on_summand(rec: &Recurrence, s: &ShiftRatios) -> (MultiPoly, MultiPoly) {
    let den = s.r2.1.clone();
    // r1 = r1.0 / (A² - qN); its cofactor to den is (A² - q²N).
    let cof = den.div_exact(&s.r1.1).expect("r1 denominator divides r2 denominator");
    let num = &(&(&rec.c2 * &s.r2.0) + &(&rec.c1 * &(&s.r1.0 * &cof))) + &(&rec.c0 * &den);
    (num, den)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateCheck {
    pub holds: bool,
    /// Numerator of (operator side − telescoped side); zero iff `holds`.
    pub residual: MultiPoly,
}

/// Forward-oriented telescoping check, divided through by `F(n, a)`:
/// `c2·r2 + c1·r1 + c0 = R(N, qA)·r_A - R(N, A)`.
pub fn check_certificate(rec: &Recurrence, cert: &Certificate) -> CertificateCheck {
    check_certificate_oriented(rec, cert, Orientation::Forward)
}

pub fn check_certificate_oriented(rec: &Recurrence, cert: &Certificate, orientation: Orientation) -> CertificateCheck {
    let s = shift_ratios();
    let (ln, ld) = operator_on_summand(rec, &s);
    let lhs = MultiRational::new(ln, ld).expect("nonzero denominator");
    let ra = MultiRational::new(s.ra.0, s.ra.1).expect("nonzero denominator");
    let r = &cert.value;
    let rhs = match orientation {
        Orientation::Forward => r.scale_var(Var::A, 1).mul(&ra).sub(r),
        Orientation::Backward => {
            // G(n, a-1)/F(n, a) = R(N, A/q) / r_A(N, A/q)
            let back = r.scale_var(Var::A, -1).div(&ra.scale_var(Var::A, -1)).expect("r_A is nonzero");
            r.sub(&back)
        }
    };
    let residual = lhs.cross_residual(&rhs);
    CertificateCheck { holds: residual.is_zero(), residual }
}

/// Denominator factors a certificate may use: `A² - qN`, `A² - q²N`, `A - N`, `1 - qA`.
fn denominator_basis() -> Vec<MultiPoly> {
    let (a, n) = (var(Var::A), var(Var::N));
    let a2 = &a * &a;
    vec![
        &a2 - &(&qp(1) * &n),
        &a2 - &(&qp(2) * &n),
        &a - &n,
        &int(1) - &(&qp(1) * &a),
    ]
}

/// Searches for `R = P(A)/D(A)` with `deg_A P <= degree_cap` and `D` a
/// product of distinct basis factors (fewest factors first), solving the
/// forward identity as a linear system in the coefficients of `P` over
/// `Q(q, X, N)`. The first solution found is re-checked before returning.
pub fn solve_certificate(rec: &Recurrence, degree_cap: u32) -> Result<Certificate> {
    if degree_cap == 0 {
        return Err(Error::InvalidArgument("degree cap must be at least 1".into()));
    }
    let s = shift_ratios();
    let (ln, ld) = operator_on_summand(rec, &s);
    let basis = denominator_basis();
    let mut subsets: Vec<u32> = (0..1u32 << basis.len()).collect();
    subsets.sort_by_key(|m| (m.count_ones(), *m));
    for mask in subsets {
        let d = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(MultiPoly::one(), |acc, (_, f)| &acc * f);
        let dq = d.scale_var(Var::A, 1);
        // Σ_i p_i [q^i A^i r_A.num D(A) L.den - A^i D(qA) r_A.den L.den] = L.num D(qA) D(A) r_A.den
        let left_a = &(&s.ra.0 * &d) * &ld;
        let left_b = &(&dq * &s.ra.1) * &ld;
        let rhs = &(&(&ln * &dq) * &d) * &s.ra.1;
        let columns: Vec<MultiPoly> = (0..=degree_cap)
            .map(|i| {
                let ai = MultiPoly::var_pow(Var::A, i);
                &(&(&qp(i) * &ai) * &left_a) - &(&ai * &left_b)
            })
            .collect();
        let Some(p) = solve_in_a(&columns, &rhs)? else { continue };
        let num = p
            .iter()
            .enumerate()
            .fold(MultiRational::zero(), |acc, (i, c)| acc.add(&c.mul_poly(&MultiPoly::var_pow(Var::A, i as u32))));
        let value = num.div(&MultiRational::from_poly(d)).expect("basis product is nonzero");
        let cert = Certificate { value: value.cancel(&basis) };
        if check_certificate(rec, &cert).holds {
            return Ok(cert);
        }
    }
    Err(Error::CertificateNotFound(degree_cap))
}

/// Solves `Σ_i x_i columns[i] = rhs` coefficient-wise in `A` for
/// `x_i ∈ Q(q, X, N)`. Free unknowns are set to zero.
fn solve_in_a(columns: &[MultiPoly], rhs: &MultiPoly) -> Result<Option<Vec<MultiRational>>> {
    let split: Vec<_> = columns.iter().map(|c| c.coeffs_in(Var::A)).collect();
    let b = rhs.coeffs_in(Var::A);
    let degrees: std::collections::BTreeSet<u32> =
        split.iter().flat_map(|m| m.keys().copied()).chain(b.keys().copied()).collect();
    let width = columns.len();
    let mut rows: Vec<Vec<MultiPoly>> = degrees
        .iter()
        .map(|k| {
            let mut row: Vec<MultiPoly> = split.iter().map(|m| m.get(k).cloned().unwrap_or_default()).collect();
            row.push(b.get(k).cloned().unwrap_or_default());
            row
        })
        .collect();
    let pivots = bareiss_echelon(&mut rows, width)?;
    for row in &rows[pivots.len()..] {
        if !row[width].is_zero() {
            return Ok(None);
        }
    }
    let mut x = vec![MultiRational::zero(); width];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = MultiRational::from_poly(rows[r][width].clone());
        for j in c + 1..width {
            if !rows[r][j].is_zero() && !x[j].is_zero() {
                acc = acc.sub(&x[j].mul_poly(&rows[r][j]));
            }
        }
        x[c] = acc.div(&MultiRational::from_poly(rows[r][c].clone())).expect("pivot is nonzero");
    }
    Ok(Some(x))
}

/// Fraction-free row echelon form on the first `width` columns (the last
/// column rides along). Returns the pivot column of each leading row.
fn bareiss_echelon(rows: &mut [Vec<MultiPoly>], width: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut prev = MultiPoly::one();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            for j in c + 1..rows[i].len() {
                let t = &(&rows[r][c] * &rows[i][j]) - &(&rows[i][c] * &rows[r][j]);
                rows[i][j] = t
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("fraction-free elimination left a non-exact quotient".into()))?;
            }
            rows[i][c] = MultiPoly::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(pivots)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCheck {
    pub holds: bool,
    /// Largest index involved in the first failing relation.
    pub first_failure: Option<u32>,
}

/// `V(n) - V(n-1) + X q^{n-2} V(n-2) = 0` for `3 <= n <= n_max`, with
/// `V(1) = 1` and `V(2) = 1 - X`.
pub fn check_recurrence_numeric(n_max: u32, values: impl Fn(u32) -> Result<XQPoly>) -> Result<RecurrenceCheck> {
    if n_max < 3 {
        return Err(Error::InvalidArgument("n_max must be at least 3".into()));
    }
    if values(1)? != XQPoly::one() {
        return Ok(RecurrenceCheck { holds: false, first_failure: Some(1) });
    }
    if values(2)? != XQPoly::one().sub(&XQPoly::from_coeff(1, crate::exactalg::QPoly::one())) {
        return Ok(RecurrenceCheck { holds: false, first_failure: Some(2) });
    }
    check_operator_numeric(&Recurrence::lehmer(), n_max, values)
}

/// `c2(q^n)·V(n+2) + c1(q^n)·V(n+1) + c0(q^n)·V(n) = 0` for `1 <= n <= n_max - 2`.
pub fn check_operator_numeric(
    rec: &Recurrence,
    n_max: u32,
    values: impl Fn(u32) -> Result<XQPoly>,
) -> Result<RecurrenceCheck> {
    let mut window: Vec<XQPoly> = Vec::new();
    for m in 1..=n_max {
        window.push(values(m)?);
        if window.len() > 3 {
            window.remove(0);
        }
        if window.len() == 3 {
            let n = m - 2;
            let mut total = XQPoly::zero();
            for (c, v) in rec.coefficients().iter().zip(&window) {
                total = total.add(&substitute_na(c, n, 0).mul(v));
            }
            if !total.is_zero() {
                return Ok(RecurrenceCheck { holds: false, first_failure: Some(m) });
            }
        }
    }
    Ok(RecurrenceCheck { holds: true, first_failure: None })
}

/// `C_a(N) = C_a(N/q) - (N/q²)·C_{a-1}(N/q²)` for the closed-form coefficients.
pub fn check_coefficient_identity(a: u32) -> Result<bool> {
    if a == 0 {
        return Err(Error::InvalidArgument("a must be at least 1".into()));
    }
    Ok(coefficient_identity_holds(&coefficient_in_n(a), &coefficient_in_n(a - 1)))
}

/// The same identity for arbitrary `C_a`, `C_{a-1}`.
pub fn coefficient_identity_holds(c_a: &NRational, c_prev: &NRational) -> bool {
    let n_over_q2 = NRational::new(NPoly2::var_n(), NPoly2::q_pow_n2(2)).expect("q^2 is nonzero");
    let rhs = c_a.scale_n(-1).sub(&n_over_q2.mul(&c_prev.scale_n(-2)));
    rational_equal(c_a, &rhs)
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// First counterexample (an `n`, an `a`, or a residual) when failed.
    pub counterexample: Option<Value>,
}

impl CheckOutcome {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"check": self.name, "passed": self.passed});
        if let Some(c) = &self.counterexample {
            v["counterexample"] = c.clone();
        }
        v
    }
}

pub fn recurrence_outcome(name: &str, check: &RecurrenceCheck) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        passed: check.holds,
        counterexample: check.first_failure.map(|n| json!({"n": n})),
    }
}

pub fn certificate_outcome(name: &str, check: &CertificateCheck) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        passed: check.holds,
        counterexample: (!check.holds).then(|| json!({"residual": check.residual.render(&["q", "X", "N", "A"], false)})),
    }
}

pub fn report_to_json(outcomes: &[CheckOutcome]) -> Value {
    json!({
        "passed": outcomes.iter().all(|o| o.passed),
        "checks": outcomes.iter().map(CheckOutcome::to_json).collect::<Vec<_>>(),
    })
}
