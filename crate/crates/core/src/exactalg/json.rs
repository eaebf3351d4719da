//! JSON forms.
//!
//! * `QPoly`: `[[exp, "num", "den"], ...]`, ascending exponents.
//! * `XQPoly`: `{"a": <QPoly>, ...}` keyed by X-degree, ascending.
//! * `NPoly2`: `[[deg_N, deg_q, "num", "den"], ...]`.
//! * `NRational`: `{"num": <NPoly2>, "den": <NPoly2>}`.
//!
//! Integers are carried as decimal strings so no precision is lost.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::interp::NPoly2;
use super::poly::{Exponent, Poly, Rational};
use super::ratfunc::NRational;
use super::univariate::QPoly;
use super::xq::XQPoly;
use crate::error::{Error, Result};

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("invalid {what} JSON: {v}"))
}

fn poly_to_json<E: Exponent>(p: &Poly<E>) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| {
                let mut row: Vec<Value> = e.components().iter().map(|k| json!(k)).collect();
                row.push(json!(c.numer().to_string()));
                row.push(json!(c.denom().to_string()));
                Value::Array(row)
            })
            .collect(),
    )
}

fn poly_from_json<E: Exponent>(v: &Value, arity: usize, what: &str) -> Result<Poly<E>> {
    let rows = v.as_array().ok_or_else(|| bad(what, v))?;
    let mut p = Poly::zero();
    let mut last: Option<E> = None;
    for row in rows {
        let cells = row.as_array().filter(|r| r.len() == arity + 2).ok_or_else(|| bad(what, row))?;
        let exps = cells[..arity]
            .iter()
            .map(|c| c.as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| bad(what, row)))
            .collect::<Result<Vec<u32>>>()?;
        let num: BigInt = cells[arity].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad(what, row))?;
        let den: BigInt = cells[arity + 1].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad(what, row))?;
        if den <= BigInt::from(0) || num == BigInt::from(0) {
            return Err(bad(what, row));
        }
        let c = Rational::new(num, den);
        if c.numer().to_string() != cells[arity].as_str().unwrap_or_default() {
            return Err(Error::Parse(format!("non-reduced coefficient in {what} JSON: {row}")));
        }
        let e = E::from_components(&exps);
        if last.is_some_and(|l| l >= e) {
            return Err(Error::Parse(format!("{what} JSON exponents not strictly increasing at {row}")));
        }
        last = Some(e);
        p = &p + &Poly::monomial(e, c);
    }
    Ok(p)
}

pub fn qpoly_to_json(p: &QPoly) -> Value {
    poly_to_json(p)
}

pub fn qpoly_from_json(v: &Value) -> Result<QPoly> {
    poly_from_json(v, 1, "QPoly")
}

pub fn npoly2_to_json(p: &NPoly2) -> Value {
    poly_to_json(p)
}

pub fn npoly2_from_json(v: &Value) -> Result<NPoly2> {
    poly_from_json(v, 2, "NPoly2")
}

pub fn xqpoly_to_json(p: &XQPoly) -> Value {
    let mut m = Map::new();
    for (a, c) in p.coeffs() {
        m.insert(a.to_string(), qpoly_to_json(c));
    }
    Value::Object(m)
}

pub fn xqpoly_from_json(v: &Value) -> Result<XQPoly> {
    let m = v.as_object().ok_or_else(|| bad("XQPoly", v))?;
    let mut out = XQPoly::zero();
    for (k, c) in m {
        let a: u32 = k.parse().map_err(|_| bad("XQPoly", v))?;
        let p = qpoly_from_json(c)?;
        if p.is_zero() || !out.coeff(a).is_zero() {
            return Err(bad("XQPoly", v));
        }
        out = out.add(&XQPoly::from_coeff(a, p));
    }
    Ok(out)
}

pub fn nrational_to_json(r: &NRational) -> Value {
    json!({"num": npoly2_to_json(r.num()), "den": npoly2_to_json(r.den())})
}

pub fn nrational_from_json(v: &Value) -> Result<NRational> {
    let num = npoly2_from_json(v.get("num").ok_or_else(|| bad("NRational", v))?)?;
    let den = npoly2_from_json(v.get("den").ok_or_else(|| bad("NRational", v))?)?;
    NRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_xqpoly;
    use proptest::prelude::*;

    #[test]
    fn documented_shapes() {
        let p = QPoly::from_ints(&[1, 0, -3]);
        assert_eq!(qpoly_to_json(&p).to_string(), r#"[[0,"1","1"],[2,"-3","1"]]"#);
        let x = parse_xqpoly("1 - X + q^2*X^2").unwrap();
        assert_eq!(
            xqpoly_to_json(&x).to_string(),
            r#"{"0":[[0,"1","1"]],"1":[[0,"-1","1"]],"2":[[2,"1","1"]]}"#
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad_json in [
            r#"[[0,"1"]]"#,
            r#"[[0,"1","0"]]"#,
            r#"[[1,"1","1"],[0,"1","1"]]"#,
            r#"[[0,"2","4"]]"#,
            r#"{"a": 1}"#,
        ] {
            let v: Value = serde_json::from_str(bad_json).unwrap();
            assert!(qpoly_from_json(&v).is_err(), "{bad_json}");
        }
    }

    proptest! {
        #[test]
        fn json_round_trip(cs in prop::collection::vec((-9i64..=9, 1i64..=4), 0..8), a in 0u32..5) {
            let p = QPoly::from_terms(
                cs.iter().enumerate().map(|(i, (n, d))| (i as u32 * 3, Rational::new((*n).into(), (*d).into()))),
            );
            let x = XQPoly::from_coeff(a, p.clone());
            let text = serde_json::to_string(&xqpoly_to_json(&x)).unwrap();
            let back = xqpoly_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(serde_json::to_string(&xqpoly_to_json(&back)).unwrap(), text);
            prop_assert_eq!(qpoly_from_json(&qpoly_to_json(&p)).unwrap(), p);
        }
    }
}
