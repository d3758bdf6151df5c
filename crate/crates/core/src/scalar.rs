//! Scalar fields for the two arithmetic tracks.
//!
//! Exact computations run over [`Q`] (arbitrary-precision rationals), float
//! computations over `f64`. Everything that is plain field arithmetic is
//! written once against [`Scalar`]; rank and nullspace dispatch per track.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg;

pub type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Debug + PartialOrd + Send + Sync + 'static
{
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;
    fn from_q(q: &Q) -> Self;
    /// Exact for rationals: every finite double is a dyadic rational.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;

    /// Zero test. Exact track: literal zero. Float track: `|v| <= rel * max(scale, 1)`.
    fn near_zero(&self, scale: f64, rel: f64) -> bool;

    fn rank(rows: &[Vec<Self>]) -> usize;

    /// Basis of `{c : rows · c = 0}` in `R^ncols`.
    fn nullspace(rows: &[Vec<Self>], ncols: usize) -> Vec<Vec<Self>>;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_q(q: &Q) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn near_zero(&self, scale: f64, rel: f64) -> bool {
        self.abs() <= rel * scale.max(1.0)
    }

    fn rank(rows: &[Vec<Self>]) -> usize {
        linalg::float_rank(rows, linalg::REL_RANK_TOL)
    }

    fn nullspace(rows: &[Vec<Self>], ncols: usize) -> Vec<Vec<Self>> {
        linalg::float_nullspace(rows, ncols, linalg::REL_RANK_TOL)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            Value::String(s) => parse_rational(s).map(|q| f64::from_q(&q)),
            other => Err(Error::Parse(format!("expected number, got {other}"))),
        }
    }
}

impl Scalar for Q {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }

    fn from_q(q: &Q) -> Self {
        q.clone()
    }

    fn from_f64(v: f64) -> Self {
        Q::from_float(v).unwrap_or_else(Q::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near_zero(&self, _scale: f64, _rel: f64) -> bool {
        self.is_zero()
    }

    fn rank(rows: &[Vec<Self>]) -> usize {
        linalg::exact_rank(rows)
    }

    fn nullspace(rows: &[Vec<Self>], ncols: usize) -> Vec<Vec<Self>> {
        linalg::exact_nullspace(rows, ncols)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Q::from_i64(i))
                } else {
                    Err(Error::Parse(format!(
                        "exact entries must be integers or \"p/q\" strings, got {n}"
                    )))
                }
            }
            other => Err(Error::Parse(format!("expected rational, got {other}"))),
        }
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Ok(q) = Q::from_str(s) {
        return Ok(q);
    }
    // decimal literal
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let mut parts = body.splitn(2, '.');
    let int_part = parts.next().unwrap_or("");
    let frac_part = parts.next().unwrap_or("");
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a rational number: {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
        .map_err(|e| Error::Parse(e.to_string()))?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = Q::new(num, den);
    Ok(if neg { -q } else { q })
}

pub fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

pub fn qi(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

pub fn q_one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), qi(-2));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn json_round_trip_keeps_exactness() {
        let v = q(-7, 3).to_json();
        assert_eq!(v, Value::String("-7/3".into()));
        assert_eq!(Q::from_json(&v).unwrap(), q(-7, 3));
        assert!(Q::from_json(&serde_json::json!(0.5)).is_err());
    }
}
