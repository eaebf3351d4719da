//! Conjecturing the coefficient of `X^a` in `Q_n` from data.
//!
//! Two pipelines run over the same [`CoefficientTable`]:
//!
//! * Andrews mode recognizes each column as `±q^e · GP(n + m_offset, a)`,
//!   reading `m` off the degree.
//! * Ansatz mode fits a polynomial in `N = q^n` over the field `Q(q)`,
//!   raising the degree until two held-out rows agree.
//!
//! Both produce a [`GuessReport`]. Nothing here uses the closed form; it is
//! only consulted afterwards by [`GuessReport::matches_closed_form`].

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::closedform::{closed_form_coefficient, gaussian_poly};
use crate::error::{Error, Result};
use crate::exactalg::json::{nrational_from_json, nrational_to_json, qpoly_from_json, qpoly_to_json};
use crate::exactalg::{interpolate_in_n, trial_divide_numerator, NRational, QPoly, Rational, XQPoly};
use crate::lehmer::DetTable;

/// Rows of X-coefficients of `Q_1..Q_{n_max}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    rows: Vec<Vec<QPoly>>,
}

impl CoefficientTable {
    pub fn n_max(&self) -> u32 {
        self.rows.len() as u32
    }

    /// X-coefficients of `Q_n`, lowest degree first.
    pub fn row(&self, n: u32) -> &[QPoly] {
        &self.rows[n as usize - 1]
    }

    /// `c_a(n)`; zero when `X^a` does not occur in `Q_n`.
    pub fn entry(&self, n: u32, a: u32) -> QPoly {
        self.row(n).get(a as usize).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Overwrites `c_a(n)` (for fault injection).
    pub fn set_entry(&mut self, n: u32, a: u32, value: QPoly) -> Result<()> {
        let row = self
            .rows
            .get_mut((n as usize).wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("row {n} not in table")))?;
        let slot = row.get_mut(a as usize).ok_or_else(|| Error::OutOfRange(format!("X^{a} not in row {n}")))?;
        *slot = value;
        Ok(())
    }

    /// The X^a column for `n = 1..=n_max`.
    pub fn column(&self, a: u32) -> Vec<QPoly> {
        (1..=self.n_max()).map(|n| self.entry(n, a)).collect()
    }
}

pub fn generate_table(n_max: u32) -> Result<CoefficientTable> {
    let mut t = DetTable::new();
    t.get(n_max)?;
    let rows = t
        .values()
        .iter()
        .enumerate()
        .map(|(i, q)| (0..=(i as u32).div_ceil(2)).map(|a| q.coeff(a)).collect())
        .collect();
    Ok(CoefficientTable { rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Andrews,
    Ansatz,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Andrews => "andrews",
            Mode::Ansatz => "ansatz",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "andrews" => Ok(Mode::Andrews),
            "ansatz" => Ok(Mode::Ansatz),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GuessForm {
    /// `GP(n + m_offset, n_param)`.
    Gaussian { m_offset: i64, n_param: u32 },
    /// A rational function of `N = q^n`.
    Rational(NRational),
}

/// Conjectured `c_a(n)`: `sign · q^{q_shift} · GP(...)` for the Gaussian form;
/// the rational form carries its own sign and q-power, and `sign`, `q_shift`
/// then describe the data (sign and lowest q-exponent of every `c_a(n)`).
#[derive(Clone, Debug, PartialEq)]
pub struct GuessTerm {
    pub a: u32,
    pub sign: i8,
    pub q_shift: u32,
    pub form: GuessForm,
    /// Table rows never used to build the guess but reproduced by it.
    pub holdouts: u32,
}

impl GuessTerm {
    /// The conjectured `c_a(n)`; zero for `n < 2a`.
    pub fn coefficient_at(&self, n: u32) -> Result<QPoly> {
        if n < 2 * self.a {
            return Ok(QPoly::zero());
        }
        match &self.form {
            GuessForm::Gaussian { m_offset, n_param } => {
                let gp = gaussian_poly(i64::from(n) + m_offset, *n_param)?;
                Ok(gp.mul_term(self.q_shift, &Rational::from_integer(self.sign.into())))
            }
            GuessForm::Rational(r) => r
                .value_at(n)
                .ok_or_else(|| Error::InvalidArgument(format!("guess for a={} is not a polynomial at n={n}", self.a))),
        }
    }

    /// Human-readable form, e.g. `-q^6*GP(n-6,3)` or `(N - q)/(q - q^2)`.
    pub fn render(&self) -> String {
        match &self.form {
            GuessForm::Gaussian { m_offset, n_param } => {
                let sign = if self.sign < 0 { "-" } else { "" };
                let shift = match self.q_shift {
                    0 => String::new(),
                    1 => "q*".into(),
                    e => format!("q^{e}*"),
                };
                let m = match m_offset {
                    0 => "n".to_string(),
                    k if *k < 0 => format!("n-{}", -k),
                    k => format!("n+{k}"),
                };
                format!("{sign}{shift}GP({m},{n_param})")
            }
            GuessForm::Rational(r) => r.to_string(),
        }
    }
}

fn first_row(a: u32) -> u32 {
    (2 * a).max(1)
}

fn require_rows(table: &CoefficientTable, a: u32, needed: u32, what: &str) -> Result<()> {
    if table.n_max() < needed {
        return Err(Error::InvalidArgument(format!(
            "{what} for a={a} needs rows up to n={needed}, table has {}",
            table.n_max()
        )));
    }
    Ok(())
}

const ANDREWS_WINDOW: u32 = 3;

/// Recognizes column `a` as `sign · q^e · GP(n + offset, a)`.
///
/// The first three rows from `n = 2a` fix `sign`, `e` and `offset`; every
/// later row must agree. Any mismatch is reported with its row.
pub fn andrews_guess(table: &CoefficientTable, a: u32) -> Result<GuessTerm> {
    let start = first_row(a);
    require_rows(table, a, 2 * a + 4, "Andrews guess")?;
    let fail = |n: u32| Error::NoGaussianFit { a, n };
    let mut fit: Option<(i8, u32, i64)> = None;
    for n in start..=table.n_max() {
        let c = table.entry(n, a);
        let sign = c.uniform_sign().ok_or_else(|| fail(n))?;
        let shift = c.low_degree().ok_or_else(|| fail(n))?;
        let p = c.unshift(shift).ok_or_else(|| fail(n))?.scale(&Rational::from_integer(sign.into()));
        let m = if a == 0 {
            if !p.is_one() {
                return Err(fail(n));
            }
            0
        } else {
            let deg = p.degree().ok_or_else(|| fail(n))?;
            if deg % a != 0 {
                return Err(fail(n));
            }
            let m = deg / a;
            if p != gaussian_poly(m.into(), a).map_err(|_| fail(n))? {
                return Err(fail(n));
            }
            i64::from(m)
        };
        let this = (sign, shift, if a == 0 { 0 } else { m - i64::from(n) });
        match fit {
            None => fit = Some(this),
            Some(f) if f != this => return Err(fail(n)),
            Some(_) => {}
        }
    }
    let (sign, q_shift, m_offset) = fit.ok_or_else(|| fail(start))?;
    let rows = table.n_max() - start + 1;
    Ok(GuessTerm {
        a,
        sign,
        q_shift,
        form: GuessForm::Gaussian { m_offset, n_param: a },
        holdouts: rows.saturating_sub(ANDREWS_WINDOW),
    })
}

const HOLDOUT: u32 = 2;

/// Fits column `a` by a polynomial in `N` of degree 0, 1, 2, ... (at most
/// `a + 2`), interpolating rows `2a..2a+d` and accepting when the next two
/// rows agree. The accepted fit must then reproduce every row of the table.
pub fn ansatz_guess(table: &CoefficientTable, a: u32) -> Result<GuessTerm> {
    let start = first_row(a);
    require_rows(table, a, start + a + 1 + HOLDOUT, "ansatz guess")?;
    let cap = a + 2;
    let node = |n: u32| (QPoly::q_pow(n), table.entry(n, a));
    for d in 0..=cap {
        let last_fit = start + d;
        if last_fit + HOLDOUT > table.n_max() {
            break;
        }
        let points: Vec<(QPoly, QPoly)> = (start..=last_fit).map(node).collect();
        let r = interpolate_in_n(&points, d as usize)?;
        if !(1..=HOLDOUT).all(|h| r.matches_at(last_fit + h, &table.entry(last_fit + h, a))) {
            continue;
        }
        if let Some(bad) = (start..=table.n_max()).find(|&n| !r.matches_at(n, &table.entry(n, a))) {
            return Err(Error::AnsatzFailed {
                a,
                reason: format!("degree {d} fit passed its holdouts but fails at n={bad}"),
            });
        }
        let c = table.entry(start, a);
        return Ok(GuessTerm {
            a,
            sign: c.uniform_sign().unwrap_or(1),
            q_shift: c.low_degree().unwrap_or(0),
            form: GuessForm::Rational(r),
            holdouts: table.n_max() - last_fit,
        });
    }
    Err(Error::AnsatzFailed { a, reason: format!("no fit of degree <= {cap} in N") })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GuessReport {
    pub mode: Mode,
    pub a_max: u32,
    pub terms: Vec<GuessTerm>,
    pub data_range: (u32, u32),
    pub holdout_verified: bool,
    /// `d(a)/d(a-1)` for `a = 2..=a_max` (ansatz mode).
    pub denominator_ratios: Option<Vec<QPoly>>,
    /// `s_a` with `d(a)/d(a-1) = s_a · q^a (1 - q^a)`, with `d(a)` normalized
    /// so the stripped numerator `Π (N - q^j)` is monic (ansatz mode).
    pub ratio_signs: Option<Vec<i8>>,
}

impl GuessReport {
    /// `Σ_a X^a · c_a(n)` from the conjectured terms.
    pub fn rebuild(&self, n: u32) -> Result<XQPoly> {
        let mut out = XQPoly::zero();
        for t in self.terms.iter().filter(|t| 2 * t.a <= n) {
            out = out.add(&XQPoly::from_coeff(t.a, t.coefficient_at(n)?));
        }
        Ok(out)
    }

    /// Whether every term equals `(-1)^a q^{a(a-1)} GP(n-2a, a)` on the data range.
    pub fn matches_closed_form(&self) -> Result<bool> {
        for t in &self.terms {
            for n in first_row(t.a).max(self.data_range.0)..=self.data_range.1 {
                if t.coefficient_at(n)? != closed_form_coefficient(n, t.a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| match &t.form {
                GuessForm::Gaussian { m_offset, n_param } => json!({
                    "a": t.a, "sign": t.sign, "q_shift": t.q_shift,
                    "gaussian": {"m_offset": m_offset, "n_param": n_param},
                    "holdouts": t.holdouts,
                }),
                GuessForm::Rational(r) => json!({
                    "a": t.a, "sign": t.sign, "q_shift": t.q_shift,
                    "rational": nrational_to_json(r),
                    "holdouts": t.holdouts,
                }),
            })
            .collect();
        let mut v = json!({
            "mode": self.mode.to_string(),
            "a_max": self.a_max,
            "data_range": [self.data_range.0, self.data_range.1],
            "holdout_verified": self.holdout_verified,
            "terms": terms,
        });
        if let Some(ratios) = &self.denominator_ratios {
            v["denominator_ratios"] = Value::Array(ratios.iter().map(qpoly_to_json).collect());
        }
        if let Some(signs) = &self.ratio_signs {
            v["ratio_signs"] = json!(signs);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("GuessReport JSON: {what}"));
        let uint = |v: &Value, what: &str| -> Result<u32> {
            v.as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| bad(what))
        };
        let mode: Mode = v["mode"].as_str().ok_or_else(|| bad("mode"))?.parse()?;
        let range = v["data_range"].as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("data_range"))?;
        let terms = v["terms"]
            .as_array()
            .ok_or_else(|| bad("terms"))?
            .iter()
            .map(|t| {
                let sign = t["sign"].as_i64().filter(|s| *s == 1 || *s == -1).ok_or_else(|| bad("sign"))? as i8;
                let form = if let Some(g) = t.get("gaussian") {
                    GuessForm::Gaussian {
                        m_offset: g["m_offset"].as_i64().ok_or_else(|| bad("m_offset"))?,
                        n_param: uint(&g["n_param"], "n_param")?,
                    }
                } else {
                    GuessForm::Rational(nrational_from_json(t.get("rational").ok_or_else(|| bad("term form"))?)?)
                };
                Ok(GuessTerm {
                    a: uint(&t["a"], "a")?,
                    sign,
                    q_shift: uint(&t["q_shift"], "q_shift")?,
                    form,
                    holdouts: uint(&t["holdouts"], "holdouts")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let denominator_ratios = match v.get("denominator_ratios") {
            Some(r) => Some(r.as_array().ok_or_else(|| bad("denominator_ratios"))?.iter().map(qpoly_from_json).collect::<Result<_>>()?),
            None => None,
        };
        let ratio_signs = match v.get("ratio_signs") {
            Some(r) => Some(
                r.as_array()
                    .ok_or_else(|| bad("ratio_signs"))?
                    .iter()
                    .map(|s| s.as_i64().filter(|s| *s == 1 || *s == -1).map(|s| s as i8).ok_or_else(|| bad("ratio_signs")))
                    .collect::<Result<_>>()?,
            ),
            None => None,
        };
        Ok(GuessReport {
            mode,
            a_max: uint(&v["a_max"], "a_max")?,
            terms,
            data_range: (uint(&range[0], "data_range")?, uint(&range[1], "data_range")?),
            holdout_verified: v["holdout_verified"].as_bool().ok_or_else(|| bad("holdout_verified"))?,
            denominator_ratios,
            ratio_signs,
        })
    }
}

/// `d(a)`: the denominator of the fitted `c_a` once its numerator is reduced
/// to the monic product `Π_{j=a}^{2a-1} (N - q^j)`.
pub fn normalized_denominator(term: &GuessTerm) -> Result<QPoly> {
    let a = term.a;
    let broken = || Error::DenominatorPattern(a);
    let GuessForm::Rational(r) = &term.form else { return Err(broken()) };
    let (roots, rest) = trial_divide_numerator(r, 2 * a + 2);
    if roots != (a..2 * a).collect::<Vec<u32>>() {
        return Err(broken());
    }
    let lead = rest.num().to_qpoly().ok_or_else(broken)?;
    let den = rest.den().to_qpoly().ok_or_else(broken)?;
    den.div_exact(&lead).ok_or_else(broken)
}

fn denominator_analysis(report: &GuessReport) -> Result<(Vec<QPoly>, Vec<i8>)> {
    if report.mode != Mode::Ansatz {
        return Err(Error::InvalidArgument("denominator analysis needs an ansatz report".into()));
    }
    let mut dens = Vec::new();
    for a in 1..=report.a_max {
        let term = report.terms.iter().find(|t| t.a == a).ok_or(Error::DenominatorPattern(a))?;
        dens.push(normalized_denominator(term)?);
    }
    let mut ratios = Vec::new();
    let mut signs = Vec::new();
    for a in 2..=report.a_max {
        let (hi, lo) = (&dens[a as usize - 1], &dens[a as usize - 2]);
        let ratio = hi.div_exact(lo).ok_or(Error::DenominatorPattern(a))?;
        let pattern = &QPoly::q_pow(a) - &QPoly::q_pow(2 * a);
        let sign = if ratio == pattern {
            1
        } else if ratio == -&pattern {
            -1
        } else {
            return Err(Error::DenominatorPattern(a));
        };
        ratios.push(ratio);
        signs.push(sign);
    }
    Ok((ratios, signs))
}

/// Expanded `d(a)/d(a-1)` for `a = 2..=a_max`; each must be `±q^a (1 - q^a)`.
pub fn analyze_denominators(report: &GuessReport) -> Result<Vec<QPoly>> {
    denominator_analysis(report).map(|(r, _)| r)
}

/// Runs one pipeline for `a = 0..=a_max` on a freshly generated table.
pub fn synthesize_conjecture(mode: Mode, a_max: u32, n_max: u32) -> Result<GuessReport> {
    if n_max < 2 * a_max + 4 {
        return Err(Error::InvalidArgument(format!("n_max={n_max} is too small for a_max={a_max}")));
    }
    synthesize_from_table(mode, a_max, &generate_table(n_max)?)
}

/// Runs one pipeline for `a = 0..=a_max` on the given table.
pub fn synthesize_from_table(mode: Mode, a_max: u32, table: &CoefficientTable) -> Result<GuessReport> {
    let terms = (0..=a_max)
        .map(|a| match mode {
            Mode::Andrews => andrews_guess(table, a),
            Mode::Ansatz => ansatz_guess(table, a),
        })
        .collect::<Result<Vec<_>>>()?;
    let n_max = table.n_max();
    let mut holdout_verified = terms.iter().all(|t| t.holdouts >= HOLDOUT);
    'rows: for n in 1..=n_max {
        for t in &terms {
            if t.coefficient_at(n)? != table.entry(n, t.a) {
                holdout_verified = false;
                break 'rows;
            }
        }
    }
    let mut report = GuessReport {
        mode,
        a_max,
        terms,
        data_range: (1, n_max),
        holdout_verified,
        denominator_ratios: None,
        ratio_signs: None,
    };
    if mode == Mode::Ansatz {
        let (ratios, signs) = denominator_analysis(&report)?;
        report.denominator_ratios = Some(ratios);
        report.ratio_signs = Some(signs);
    }
    Ok(report)
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

    fn gaussian(t: &GuessTerm) -> (i8, u32, i64, u32) {
        match t.form {
            GuessForm::Gaussian { m_offset, n_param } => (t.sign, t.q_shift, m_offset, n_param),
            _ => panic!("expected Gaussian form"),
        }
    }

    fn rational(t: &GuessTerm) -> &NRational {
        match &t.form {
            GuessForm::Rational(r) => r,
            _ => panic!("expected rational form"),
        }
    }

    const BULLETS: [&str; 5] = [
        "(N-q)/(q*(1-q))",
        "(N-q^2)*(N-q^3)/(q^3*(1+q)*(1-q)^2)",
        "-(N-q^3)*(N-q^4)*(N-q^5)/(q^6*(1+q)*(q^2+q+1)*(q-1)^3)",
        "(N-q^4)*(N-q^5)*(N-q^6)*(N-q^7)/(q^10*(q^2+1)*(q-1)^4*(1+q)^2*(q^2+q+1))",
        "-(N-q^5)*(N-q^6)*(N-q^7)*(N-q^8)*(N-q^9)/(q^15*(q^2+1)*(1+q)^2*(q^2+q+1)*(q^4+q^3+q^2+q+1)*(q-1)^5)",
    ];

    #[test]
    fn table_columns() {
        let t = generate_table(10).unwrap();
        assert_eq!(t.row(1), &[QPoly::one()]);
        let x1: Vec<String> = t.column(1).iter().take(8).map(|p| p.to_string()).collect();
        assert_eq!(x1[0], "0");
        assert_eq!(t.entry(3, 1), qp("-1-q"));
        assert_eq!(t.entry(8, 1), qp("-(1+q+q^2+q^3+q^4+q^5+q^6)"));
        assert_eq!(t.entry(10, 2), qp("q^2+q^3+2*q^4+2*q^5+3*q^6+3*q^7+4*q^8+3*q^9+3*q^10+2*q^11+2*q^12+q^13+q^14"));
        assert_eq!(generate_table(1).unwrap().n_max(), 1);
        for n in 1..=10 {
            assert_eq!(t.row(n).len() as u32, n / 2 + 1);
        }
        assert!(generate_table(0).is_err());
    }

    #[test]
    fn andrews_single_terms() {
        let t = generate_table(20).unwrap();
        assert_eq!(gaussian(&andrews_guess(&t, 0).unwrap()), (1, 0, 0, 0));
        assert_eq!(gaussian(&andrews_guess(&t, 1).unwrap()), (-1, 0, -2, 1));
        assert_eq!(gaussian(&andrews_guess(&t, 2).unwrap()), (1, 2, -4, 2));
        assert_eq!(gaussian(&andrews_guess(&t, 4).unwrap()), (1, 12, -8, 4));
        assert_eq!(andrews_guess(&t, 3).unwrap().render(), "-q^6*GP(n-6,3)");
        assert!(andrews_guess(&generate_table(9).unwrap(), 3).is_err());
    }

    #[test]
    fn andrews_report() {
        let r = synthesize_conjecture(Mode::Andrews, 5, 20).unwrap();
        let got: Vec<_> = r.terms.iter().map(gaussian).collect();
        assert_eq!(
            got,
            vec![(1, 0, 0, 0), (-1, 0, -2, 1), (1, 2, -4, 2), (-1, 6, -6, 3), (1, 12, -8, 4), (-1, 20, -10, 5)]
        );
        assert!(r.holdout_verified);
        assert!(r.matches_closed_form().unwrap());
        let small = synthesize_conjecture(Mode::Andrews, 0, 4).unwrap();
        assert_eq!(small.terms.len(), 1);
        assert!(small.terms[0].coefficient_at(3).unwrap().is_one());
    }

    #[test]
    fn ansatz_single_terms() {
        let t = generate_table(24).unwrap();
        assert!(rational(&ansatz_guess(&t, 0).unwrap()).to_poly().unwrap().is_one());
        for a in [1u32, 4] {
            let want = parse_nrational(BULLETS[a as usize - 1]).unwrap();
            assert!(rational_equal(rational(&ansatz_guess(&t, a).unwrap()), &want), "a={a}");
        }
    }

    #[test]
    fn ansatz_report_and_denominators() {
        let r = synthesize_conjecture(Mode::Ansatz, 5, 24).unwrap();
        assert!(r.holdout_verified);
        for (a, b) in (1..=5).zip(BULLETS) {
            assert!(rational_equal(rational(&r.terms[a]), &parse_nrational(b).unwrap()), "a={a}");
        }
        let want: Vec<QPoly> = ["q^2-q^4", "q^3-q^6", "-q^8+q^4", "q^5-q^10"].iter().map(|s| qp(s)).collect();
        assert_eq!(analyze_denominators(&r).unwrap(), want);
        assert_eq!(r.denominator_ratios.as_ref().unwrap(), &want);
        assert_eq!(r.ratio_signs.as_ref().unwrap(), &vec![1, 1, 1, 1]);
        assert!(r.matches_closed_form().unwrap());
    }

    #[test]
    fn pipelines_agree() {
        let t = generate_table(24).unwrap();
        for a in 0..=5 {
            let g = andrews_guess(&t, a).unwrap();
            let r = ansatz_guess(&t, a).unwrap();
            for n in 1..=24 {
                assert_eq!(g.coefficient_at(n).unwrap(), r.coefficient_at(n).unwrap(), "a={a} n={n}");
            }
        }
    }

    #[test]
    fn rebuild_round_trip() {
        let prefix = det_prefix(17).unwrap();
        for mode in [Mode::Andrews, Mode::Ansatz] {
            let r = synthesize_conjecture(mode, 8, 30).unwrap_or_else(|e| panic!("{mode}: {e}"));
            for n in 1..=17 {
                assert_eq!(&r.rebuild(n).unwrap(), &prefix[n as usize - 1], "{mode} n={n}");
            }
        }
    }

    #[test]
    fn corrupted_entry_is_rejected() {
        let mut t = generate_table(24).unwrap();
        let c = &t.entry(12, 2) + &QPoly::q_pow(99);
        t.set_entry(12, 2, c).unwrap();
        assert_eq!(andrews_guess(&t, 2).unwrap_err(), Error::NoGaussianFit { a: 2, n: 12 });
        assert!(matches!(ansatz_guess(&t, 2), Err(Error::AnsatzFailed { a: 2, .. })));
        assert!(synthesize_from_table(Mode::Andrews, 5, &t).is_err());
        assert!(synthesize_from_table(Mode::Ansatz, 5, &t).is_err());
    }

    #[test]
    fn denominator_errors() {
        let mut r = synthesize_conjecture(Mode::Ansatz, 3, 24).unwrap();
        r.terms[2].form = GuessForm::Rational(parse_nrational("(N-q^2)*(N-q^3)/(q^3*(1+q)*(1-q))").unwrap());
        assert_eq!(analyze_denominators(&r).unwrap_err(), Error::DenominatorPattern(2));
        r.terms[2].form = GuessForm::Rational(parse_nrational("(N-q^2)/(q^3*(1+q)*(1-q)^2)").unwrap());
        assert_eq!(analyze_denominators(&r).unwrap_err(), Error::DenominatorPattern(2));
        let andrews = synthesize_conjecture(Mode::Andrews, 2, 20).unwrap();
        assert!(analyze_denominators(&andrews).is_err());
    }

    #[test]
    fn json_round_trip() {
        for mode in [Mode::Andrews, Mode::Ansatz] {
            let r = synthesize_conjecture(mode, 4, 20).unwrap();
            let text = serde_json::to_string(&r.to_json()).unwrap();
            let back = GuessReport::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
            assert_eq!(back.terms.len(), r.terms.len());
        }
        assert!(GuessReport::from_json(&json!({"mode": "psychic"})).is_err());
    }
}
