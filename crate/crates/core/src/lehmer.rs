//! Lehmer's tridiagonal matrix `M(n)` and its determinant `Q_n(X, q)`.
//!
//! Entries involve `√X` and `√q`; they are written with auxiliary variables
//! `Y = √X` and `P = √q` so every entry is an honest polynomial. The
//! determinant is computed by the three-term recurrence from last-row
//! expansion, and independently by fraction-free elimination on the matrix.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, QPoly, Rational, XQPoly};

/// Polynomial in `(Y, P)` with `Y² = X`, `P² = q`; exponents are `[Y, P]`.
pub type HalfPoly = Poly<[u32; 2]>;

const HALF_NAMES: &[&str] = &["Y", "P"];

#[derive(Clone, Debug, PartialEq)]
pub struct LehmerMatrix {
    n: u32,
    rows: Vec<Vec<HalfPoly>>,
}

impl LehmerMatrix {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn entry(&self, i: u32, j: u32) -> &HalfPoly {
        &self.rows[i as usize - 1][j as usize - 1]
    }

    pub fn rows(&self) -> &[Vec<HalfPoly>] {
        &self.rows
    }

    /// Rows rendered with `Y`, `P` names, e.g. `[[1, Y], [Y, 1]]`.
    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| c.render(HALF_NAMES, false)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// Builds `M(n)`: unit diagonal, and `Y·P^{i-1}` at both `(i, i+1)` and `(i+1, i)`.
pub fn build_matrix(n: u32) -> Result<LehmerMatrix> {
    check_n(n)?;
    let size = n as usize;
    let mut rows = vec![vec![HalfPoly::zero(); size]; size];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = HalfPoly::one();
    }
    for i in 1..n {
        let off = HalfPoly::term([1, i - 1]);
        let k = i as usize - 1;
        rows[k][k + 1] = off.clone();
        rows[k + 1][k] = off;
    }
    Ok(LehmerMatrix { n, rows })
}

/// Memo of `Q_1..Q_m` grown by the recurrence `Q_m = Q_{m-1} - X·q^{m-2}·Q_{m-2}`.
#[derive(Clone, Debug, Default)]
pub struct DetTable {
    values: Vec<XQPoly>,
}

impl DetTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Largest `n` computed so far.
    pub fn len(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn extend_to(&mut self, n: u32) {
        while self.len() < n {
            let m = self.len() + 1;
            let next = match m {
                1 => XQPoly::one(),
                2 => XQPoly::one().sub(&XQPoly::from_coeff(1, QPoly::one())),
                _ => {
                    let prev = &self.values[m as usize - 2];
                    let prev2 = &self.values[m as usize - 3];
                    prev.sub(&prev2.mul_monomial(&Rational::one(), 1, m - 2))
                }
            };
            self.values.push(next);
        }
    }

    /// `Q_n`, extending the table as needed.
    pub fn get(&mut self, n: u32) -> Result<&XQPoly> {
        check_n(n)?;
        self.extend_to(n);
        Ok(&self.values[n as usize - 1])
    }

    /// `Q_1..Q_len`.
    pub fn values(&self) -> &[XQPoly] {
        &self.values
    }
}

/// `Q_n` by the three-term recurrence.
pub fn det_recurrence(n: u32) -> Result<XQPoly> {
    let mut t = DetTable::new();
    t.get(n).cloned()
}

/// `[Q_1, ..., Q_n]` by the three-term recurrence.
pub fn det_prefix(n: u32) -> Result<Vec<XQPoly>> {
    check_n(n)?;
    let mut t = DetTable::new();
    t.extend_to(n);
    Ok(t.values)
}

/// `det M(n)` by Bareiss fraction-free elimination over `Q[Y, P]`, then
/// reduced by `Y² → X`, `P² → q`.
///
/// Intended for small `n` (a dozen or so). An odd `Y` or `P` exponent in the
/// result is reported as an internal-consistency error.
pub fn det_oracle(n: u32) -> Result<XQPoly> {
    let m = build_matrix(n)?;
    let det = bareiss_determinant(m.rows.clone())?;
    reduce_half(&det)
}

fn bareiss_determinant(mut m: Vec<Vec<HalfPoly>>) -> Result<HalfPoly> {
    let n = m.len();
    let mut prev = HalfPoly::one();
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(HalfPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).ok_or_else(|| {
                    Error::Internal(format!("Bareiss step {k} left a non-exact quotient at ({i},{j})"))
                })?;
            }
            m[i][k] = HalfPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

fn reduce_half(p: &HalfPoly) -> Result<XQPoly> {
    let mut out = XQPoly::zero();
    for (&[y, pe], c) in p.terms() {
        if y % 2 != 0 || pe % 2 != 0 {
            return Err(Error::Internal(format!("odd exponent Y^{y} P^{pe} in the determinant")));
        }
        out = out.add(&XQPoly::from_coeff(y / 2, QPoly::monomial(pe / 2, c.clone())));
    }
    Ok(out)
}
