//! Type-A Weyl combinatorics: flag types, Weyl orbits of diagonal elements,
//! parabolic coset counts and the dual involution.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{Family, LieElement};
use crate::scalar::{parse_rational, Q};

/// Multiplicity pattern of `iH` with `H` in the closed positive chamber.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagType {
    n: usize,
    values: Vec<Q>,
    multiplicities: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FlagTypeJson {
    n: usize,
    values: Vec<String>,
    mult: Vec<usize>,
}

impl Serialize for FlagType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FlagTypeJson {
            n: self.n,
            values: self.values.iter().map(|v| v.to_string()).collect(),
            mult: self.multiplicities.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlagType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FlagTypeJson::deserialize(d)?;
        let values = j
            .values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let ft = FlagType::new(values, j.mult).map_err(serde::de::Error::custom)?;
        if ft.n != j.n {
            return Err(serde::de::Error::custom(
                "n does not match the multiplicities",
            ));
        }
        Ok(ft)
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.multiplicities.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", m.join(","))
    }
}

impl FlagType {
    /// Trace-zero flag type from strictly decreasing values and their multiplicities.
    pub fn new(values: Vec<Q>, multiplicities: Vec<usize>) -> Result<Self> {
        let ft = Self::new_unnormalized(values, multiplicities)?;
        if !ft.trace().is_zero() {
            return Err(Error::Domain(format!(
                "flag type values are not trace zero (sum = {})",
                ft.trace()
            )));
        }
        Ok(ft)
    }

    /// Like [`FlagType::new`] without the trace condition (orbits in u(n)).
    pub fn new_unnormalized(values: Vec<Q>, multiplicities: Vec<usize>) -> Result<Self> {
        if values.is_empty() || values.len() != multiplicities.len() {
            return Err(Error::Domain(
                "flag type needs one multiplicity per distinct value".into(),
            ));
        }
        if multiplicities.contains(&0) {
            return Err(Error::Domain("multiplicities must be positive".into()));
        }
        if values.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Domain("values must be strictly decreasing".into()));
        }
        Ok(FlagType {
            n: multiplicities.iter().sum(),
            values,
            multiplicities,
        })
    }

    /// Groups an unordered spectrum into a flag type (no trace condition).
    pub fn from_spectrum(spectrum: &[Q]) -> Result<Self> {
        let mut sorted = spectrum.to_vec();
        sorted.sort_by(|a, b| b.cmp(a));
        let mut values: Vec<Q> = Vec::new();
        let mut mult: Vec<usize> = Vec::new();
        for v in sorted {
            if values.last() == Some(&v) {
                *mult.last_mut().unwrap() += 1;
            } else {
                values.push(v);
                mult.push(1);
            }
        }
        Self::new_unnormalized(values, mult)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    fn trace(&self) -> Q {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .map(|(v, &m)| v * Q::from_integer((m as i64).into()))
            .sum()
    }

    /// The diagonal of `H` in the closed positive chamber (descending).
    pub fn expanded(&self) -> Vec<Q> {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(v, &m)| std::iter::repeat_n(v.clone(), m))
            .collect()
    }

    pub fn is_maximal(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }
}

/// One diagonal rearrangement of `H`: `diagonal[i] = expanded[permutation[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylPoint {
    #[serde(serialize_with = "ser_rationals")]
    pub diagonal: Vec<Q>,
    pub permutation: Vec<usize>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

/// Flag type of a diagonal su(n) or u(n) element; trace zero is required for su(n).
pub fn flag_type_of(h: &LieElement<Q>) -> Result<FlagType> {
    let m = h.matrix();
    if !m.is_diagonal() {
        return Err(Error::Domain("flagTypeOf needs a diagonal element".into()));
    }
    if h.algebra().family == Family::So {
        return Err(Error::Domain(
            "flag types are defined for su(n) and u(n)".into(),
        ));
    }
    let spectrum: Vec<Q> = (0..m.n()).map(|i| m.get(i, i).im.clone()).collect();
    let ft = FlagType::from_spectrum(&spectrum)?;
    if h.algebra().family == Family::Su {
        FlagType::new(ft.values, ft.multiplicities)
    } else {
        Ok(ft)
    }
}

/// Lexicographic next permutation; false when `p` was the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Distinct diagonal rearrangements, each with its lexicographically first witness.
pub fn weyl_orbit(ft: &FlagType) -> Vec<WeylPoint> {
    let base = ft.expanded();
    let mut perm: Vec<usize> = (0..ft.n).collect();
    let mut out: Vec<WeylPoint> = Vec::new();
    loop {
        let diagonal: Vec<Q> = perm.iter().map(|&k| base[k].clone()).collect();
        if !out.iter().any(|w| w.diagonal == diagonal) {
            out.push(WeylPoint {
                diagonal,
                permutation: perm.clone(),
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// `n! / prod m_i!`
pub fn coset_count(ft: &FlagType) -> u128 {
    let denom: u128 = ft.multiplicities.iter().map(|&m| factorial(m)).product();
    factorial(ft.n) / denom
}

/// Flag type of `-H`, re-sorted.
pub fn dual_involution(ft: &FlagType) -> FlagType {
    FlagType {
        n: ft.n,
        values: ft.values.iter().rev().map(|v| -v.clone()).collect(),
        multiplicities: ft.multiplicities.iter().rev().cloned().collect(),
    }
}

/// Real dimension `n^2 - sum m_i^2` of the flag manifold.
pub fn flag_dimension(ft: &FlagType) -> usize {
    ft.n * ft.n - ft.multiplicities.iter().map(|m| m * m).sum::<usize>()
}
