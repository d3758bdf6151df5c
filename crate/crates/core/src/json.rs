//! JSON encodings shared by reports and the command line.
//!
//! Elements: `{"family","n","mode","rows":[[[re,im],...],...]}`, exact entries as
//! `"p/q"` strings. Unitaries: `{"n","rows":...}` with float entries.

use num_complex::{Complex, Complex64};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::Unitary;
use crate::lie::{AlgebraDescriptor, Family, LieElement};
use crate::matrix::CMat;
use crate::scalar::Scalar;

pub fn matrix_rows<S: Scalar>(m: &CMat<S>) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|z| Value::Array(vec![z.re.to_json(), z.im.to_json()]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn element_json<S: Scalar>(x: &LieElement<S>) -> Value {
    let a = x.algebra();
    json!({
        "family": a.family.as_str(),
        "n": a.n,
        "mode": S::MODE.as_str(),
        "rows": matrix_rows(x.matrix()),
    })
}

pub fn unitary_json(u: &Unitary) -> Value {
    json!({"n": u.n(), "rows": matrix_rows(u.matrix())})
}

fn parse_rows<S: Scalar>(rows: &Value) -> Result<CMat<S>> {
    let rows = rows
        .as_array()
        .ok_or_else(|| Error::Parse("\"rows\" must be an array".into()))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("each row must be an array".into()))?
                .iter()
                .map(|e| match e {
                    Value::Array(p) if p.len() == 2 => {
                        Ok(Complex::new(S::from_json(&p[0])?, S::from_json(&p[1])?))
                    }
                    other => Ok(Complex::new(S::from_json(other)?, S::zero())),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CMat::from_rows(parsed).ok_or_else(|| Error::Parse("matrix rows must form a square".into()))
}

/// Parses an element; `family` and `n` default to `fallback` and the row count.
pub fn element_from_json<S: Scalar>(
    v: &Value,
    fallback: Option<AlgebraDescriptor>,
) -> Result<LieElement<S>> {
    let m = parse_rows::<S>(v.get("rows").unwrap_or(v))?;
    let family = match v.get("family").and_then(Value::as_str) {
        Some(f) => Family::parse(f)?,
        None => fallback.map(|a| a.family).unwrap_or(Family::Su),
    };
    if let Some(n) = v.get("n").and_then(Value::as_u64) {
        if n as usize != m.n() {
            return Err(Error::Parse(format!(
                "\"n\" is {n} but there are {} rows",
                m.n()
            )));
        }
    }
    LieElement::new(AlgebraDescriptor::new(family, m.n())?, m)
}

/// Parses a unitary from `{"rows": ...}` or a bare row array.
pub fn unitary_from_json(v: &Value) -> Result<Unitary> {
    let m: CMat<f64> = parse_rows(v.get("rows").unwrap_or(v))?;
    Unitary::new(m)
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn exact_round_trip() {
        let a = AlgebraDescriptor::su(2);
        let x = LieElement::<Q>::i_diag(a, &[q(1, 2), q(-1, 2)]).unwrap();
        let v = element_json(&x);
        assert_eq!(v["rows"][0][0], json!(["0", "1/2"]));
        let back: LieElement<Q> = element_from_json(&v, None).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn unitary_round_trip_and_rejects_non_unitary() {
        let u = Unitary::permutation(&[1, 0]);
        assert_eq!(unitary_from_json(&unitary_json(&u)).unwrap(), u);
        assert!(unitary_from_json(&json!([[1.0, 1.0], [0.0, 1.0]])).is_err());
    }
}
