#![allow(dead_code)]

use num_complex::Complex;
use orbitlab::lie::{AlgebraDescriptor, LieElement};
use orbitlab::matrix::CMat;
use orbitlab::orbit::{AdjointOrbit, OrbitPoint};
use orbitlab::scalar::{qi, Q};

pub fn su(n: usize) -> AlgebraDescriptor {
    AlgebraDescriptor::su(n)
}

pub fn diag_q(v: &[i64]) -> LieElement<Q> {
    let a = AlgebraDescriptor::su(v.len());
    LieElement::i_diag(a, &v.iter().map(|&x| qi(x)).collect::<Vec<_>>()).unwrap()
}

pub fn diag_f(v: &[f64]) -> LieElement<f64> {
    LieElement::i_diag(AlgebraDescriptor::su(v.len()), v).unwrap()
}

pub fn orbit(v: &[i64]) -> AdjointOrbit {
    AdjointOrbit::through_diagonal(&diag_q(v)).unwrap()
}

pub fn base_f(v: &[i64]) -> OrbitPoint<f64> {
    OrbitPoint::at_diagonal(&diag_q(v)).unwrap()
}

/// Exact matrix from integer (re, im) entries.
pub fn exact(a: AlgebraDescriptor, rows: &[&[(i64, i64)]]) -> LieElement<Q> {
    let m = CMat::from_fn(a.n, |i, j| Complex::new(qi(rows[i][j].0), qi(rows[i][j].1)));
    LieElement::new(a, m).unwrap()
}

/// `H = i·diag{2,-1,-1}`
pub fn h_su3() -> LieElement<Q> {
    diag_q(&[2, -1, -1])
}
