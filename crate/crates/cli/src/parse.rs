//! Argument value parsers: diagonals, complex numbers, named unitaries, subalgebras.

use num_complex::Complex64;
use num_traits::Zero;
use orbitlab::case_study::k_matrix;
use orbitlab::error::{Error, Result};
use orbitlab::group::Unitary;
use orbitlab::json::{element_from_json, unitary_from_json};
use orbitlab::lie::{centralizer, AlgebraDescriptor, Family, LieElement, Subalgebra};
use orbitlab::scalar::{parse_rational, Scalar, Q};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Comma-separated rationals.
pub fn rationals(s: &str) -> Result<Vec<Q>> {
    let v: Vec<Q> = s.split(',').map(parse_rational).collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    Ok(v)
}

/// Shifts a diagonal to trace zero, returning a note when it changed.
pub fn normalize(v: Vec<Q>, what: &str) -> (Vec<Q>, Option<String>) {
    let n = Q::from_integer((v.len() as i64).into());
    let mean = v.iter().cloned().sum::<Q>() / n;
    if mean.is_zero() {
        return (v, None);
    }
    let shifted: Vec<Q> = v.iter().map(|x| x - &mean).collect();
    let note = format!(
        "{what}: diagonal {} shifted by {} to trace zero: {}",
        join(&v),
        -mean,
        join(&shifted)
    );
    (shifted, Some(note))
}

fn join(v: &[Q]) -> String {
    v.iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Trace-zero diagonal `i·diag(v)` in su(n), normalized with a note if needed.
pub fn su_diagonal(s: &str, what: &str, notes: &mut Vec<String>) -> Result<LieElement<Q>> {
    let (v, note) = normalize(rationals(s)?, what);
    notes.extend(note);
    let a = AlgebraDescriptor::new(Family::Su, v.len())?;
    LieElement::i_diag(a, &v)
}

fn read_json(s: &str) -> Result<Option<Value>> {
    let text = if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
    } else if s.trim_start().starts_with(['[', '{']) {
        s.to_string()
    } else {
        return Ok(None);
    };
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

/// An element of `a`: a JSON matrix (inline or `@file`) or a comma-separated
/// diagonal, which is normalized to trace zero for su(n).
pub fn element<S: Scalar>(
    s: &str,
    a: AlgebraDescriptor,
    what: &str,
    notes: &mut Vec<String>,
) -> Result<LieElement<S>> {
    if let Some(v) = read_json(s)? {
        let x: LieElement<S> = element_from_json(&v, Some(a))?;
        if x.algebra() != a {
            return Err(Error::Descriptor(format!(
                "{what} is in {}, expected {a}",
                x.algebra()
            )));
        }
        return Ok(x);
    }
    let mut v = rationals(s)?;
    if v.len() != a.n {
        return Err(Error::Descriptor(format!(
            "{what} has {} entries, expected {}",
            v.len(),
            a.n
        )));
    }
    if a.family == Family::Su {
        let (w, note) = normalize(v, what);
        notes.extend(note);
        v = w;
    }
    let v: Vec<S> = v.iter().map(S::from_q).collect();
    LieElement::i_diag(a, &v)
}

/// `identity`, `k` (3x3 rotation), `random`, `perm:i,j,...`, or a JSON matrix.
pub fn unitary(s: &str, n: usize, special: bool, rng: &mut ChaCha8Rng) -> Result<Unitary> {
    let u = match s.trim() {
        "identity" | "I" => Unitary::identity(n),
        "k" => k_matrix(),
        "random" => Unitary::haar(n, special, rng),
        other => {
            if let Some(p) = other.strip_prefix("perm:") {
                let perm: Vec<usize> = p
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad index {t:?}")))
                    })
                    .collect::<Result<_>>()?;
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted != (0..perm.len()).collect::<Vec<_>>() {
                    return Err(Error::Parse(format!("{p:?} is not a permutation of 0..n")));
                }
                Unitary::permutation(&perm)
            } else if let Some(v) = read_json(other)? {
                unitary_from_json(&v)?
            } else {
                return Err(Error::Parse(format!(
                    "unknown unitary {other:?} (identity, k, random, perm:..., JSON or @file)"
                )));
            }
        }
    };
    if u.n() != n {
        return Err(Error::Descriptor(format!(
            "unitary is {}x{}, expected {n}x{n}",
            u.n(),
            u.n()
        )));
    }
    if special {
        Unitary::new_special(u.matrix().clone())
    } else {
        Ok(u)
    }
}

/// Complex number: `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    let num = |u: &str| -> Result<f64> {
        match u {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => parse_rational(u).map(|q| q.to_f64()),
        }
    };
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not in leading position
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        return match cut {
            Some(k) => Ok(Complex64::new(
                num(&body[..k]).map_err(|_| bad())?,
                num(&body[k..]).map_err(|_| bad())?,
            )),
            None => Ok(Complex64::new(0.0, num(body).map_err(|_| bad())?)),
        };
    }
    Ok(Complex64::new(num(&t).map_err(|_| bad())?, 0.0))
}

/// `z1,z2`
pub fn complex_pair(s: &str) -> Result<[Complex64; 2]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!(
            "expected two complex numbers, got {s:?}"
        )));
    }
    Ok([complex(parts[0])?, complex(parts[1])?])
}

/// `so`, `torus`, `su`, `centralizer:<diag>` (also `so3`, `su3`, `torus3`).
pub fn subalgebra<S: Scalar>(
    s: &str,
    a: AlgebraDescriptor,
    notes: &mut Vec<String>,
) -> Result<Subalgebra<S>> {
    let s = s.trim();
    if let Some(d) = s.strip_prefix("centralizer:") {
        let h: LieElement<S> = element(d, a, "centralizer element", notes)?;
        return Ok(centralizer(&h));
    }
    let (name, digits) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
    if !digits.is_empty() {
        let n: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad size in {s:?}")))?;
        if n != a.n {
            return Err(Error::Descriptor(format!(
                "{s} does not act on the flag of {a}"
            )));
        }
    }
    match name {
        "so" => orbitlab::isotropy::weyl_basis_subalgebra(a),
        "torus" | "t" => Ok(Subalgebra::torus(a)),
        "su" => Ok(Subalgebra::whole(a)),
        _ => Err(Error::Parse(format!(
            "unknown subalgebra {s:?} (so, torus, su, centralizer:<diag>)"
        ))),
    }
}
