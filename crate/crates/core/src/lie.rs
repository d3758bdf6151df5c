//! Compact matrix Lie algebras su(n), so(n), u(n): elements, canonical bases,
//! Killing form, subspaces and subalgebras.
//!
//! Canonical bases, in order:
//!
//! * su(n): for each `j < k` (lexicographic) `E_jk - E_kj` then `i(E_jk + E_kj)`;
//!   then `i(E_jj - E_{j+1,j+1})` for `j = 1..n-1`.
//! * so(n): `E_jk - E_kj` for `j < k`.
//! * u(n): the off-diagonal part of the su(n) basis, then `iE_jj` for `j = 1..n`.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CMat;
use crate::scalar::{Mode, Scalar};
use crate::spectral;

/// Entrywise tolerance for structural checks (anti-Hermitian, trace) on the float track.
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Relative residual for float span membership.
pub const SPAN_TOL: f64 = 1e-9;
/// Relative eigenvalue gap below which two float eigenvalues are considered equal.
pub const SPECTRAL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Su,
    So,
    U,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Su => "su",
            Family::So => "so",
            Family::U => "u",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "su" => Ok(Family::Su),
            "so" => Ok(Family::So),
            "u" => Ok(Family::U),
            other => Err(Error::Parse(format!("unknown algebra family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    pub family: Family,
    pub n: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct DescriptorJson {
    family: Family,
    n: usize,
    #[serde(default)]
    real_dimension: Option<usize>,
}

impl Serialize for AlgebraDescriptor {
    fn serialize<Ser: serde::Serializer>(
        &self,
        s: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        DescriptorJson {
            family: self.family,
            n: self.n,
            real_dimension: Some(self.real_dimension()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DescriptorJson::deserialize(d)?;
        let a = AlgebraDescriptor::new(j.family, j.n).map_err(serde::de::Error::custom)?;
        if let Some(rd) = j.real_dimension {
            if rd != a.real_dimension() {
                return Err(serde::de::Error::custom(format!(
                    "realDimension {rd} does not match {a}"
                )));
            }
        }
        Ok(a)
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family.as_str(), self.n)
    }
}

impl AlgebraDescriptor {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = match family {
            Family::U => 1,
            Family::Su | Family::So => 2,
        };
        if n < min {
            return Err(Error::Domain(format!(
                "{}({n}) needs n >= {min}",
                family.as_str()
            )));
        }
        Ok(AlgebraDescriptor { family, n })
    }

    pub fn su(n: usize) -> Self {
        Self::new(Family::Su, n).expect("su(n) needs n >= 2")
    }

    pub fn so(n: usize) -> Self {
        Self::new(Family::So, n).expect("so(n) needs n >= 2")
    }

    pub fn u(n: usize) -> Self {
        Self::new(Family::U, n).expect("u(n) needs n >= 1")
    }

    pub fn real_dimension(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::Su => n * n - 1,
            Family::So => n * (n - 1) / 2,
            Family::U => n * n,
        }
    }

    /// Dimension of a maximal torus.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::Su => self.n - 1,
            Family::So => self.n / 2,
            Family::U => self.n,
        }
    }

    fn off_diagonal_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |j| (j + 1..n).map(move |k| (j, k)))
    }

    pub fn basis<S: Scalar>(&self) -> Vec<LieElement<S>> {
        let n = self.n;
        let one = || S::one();
        let zero = || S::zero();
        let c = |re: S, im: S| Complex::new(re, im);
        let mut out = Vec::with_capacity(self.real_dimension());
        for (j, k) in self.off_diagonal_pairs() {
            let mut a = CMat::zeros(n);
            a.set(j, k, c(one(), zero()));
            a.set(k, j, c(-one(), zero()));
            out.push(LieElement::unchecked(*self, a));
            if self.family != Family::So {
                let mut b = CMat::zeros(n);
                b.set(j, k, c(zero(), one()));
                b.set(k, j, c(zero(), one()));
                out.push(LieElement::unchecked(*self, b));
            }
        }
        match self.family {
            Family::Su => {
                for j in 0..n - 1 {
                    let mut d = CMat::zeros(n);
                    d.set(j, j, c(zero(), one()));
                    d.set(j + 1, j + 1, c(zero(), -one()));
                    out.push(LieElement::unchecked(*self, d));
                }
            }
            Family::U => {
                for j in 0..n {
                    let mut d = CMat::zeros(n);
                    d.set(j, j, c(zero(), one()));
                    out.push(LieElement::unchecked(*self, d));
                }
            }
            Family::So => {}
        }
        out
    }

    /// Coordinates of `m` in the canonical basis. Assumes `m` lies in the algebra.
    pub fn coords<S: Scalar>(&self, m: &CMat<S>) -> Vec<S> {
        let mut out = Vec::with_capacity(self.real_dimension());
        for (j, k) in self.off_diagonal_pairs() {
            let z = m.get(j, k);
            out.push(z.re.clone());
            if self.family != Family::So {
                out.push(z.im.clone());
            }
        }
        match self.family {
            Family::Su => {
                let mut acc = S::zero();
                for j in 0..self.n - 1 {
                    acc = acc + m.get(j, j).im.clone();
                    out.push(acc.clone());
                }
            }
            Family::U => {
                for j in 0..self.n {
                    out.push(m.get(j, j).im.clone());
                }
            }
            Family::So => {}
        }
        out
    }

    pub fn from_coords<S: Scalar>(&self, coords: &[S]) -> LieElement<S> {
        assert_eq!(coords.len(), self.real_dimension(), "coordinate length");
        let n = self.n;
        let mut m = CMat::zeros(n);
        let mut it = coords.iter();
        for (j, k) in self.off_diagonal_pairs() {
            let re = it.next().unwrap().clone();
            let im = if self.family != Family::So {
                it.next().unwrap().clone()
            } else {
                S::zero()
            };
            m.set(j, k, Complex::new(re.clone(), im.clone()));
            m.set(k, j, Complex::new(-re, im));
        }
        match self.family {
            Family::Su => {
                let c: Vec<S> = it.cloned().collect();
                for j in 0..n {
                    let up = if j < n - 1 { c[j].clone() } else { S::zero() };
                    let down = if j > 0 { c[j - 1].clone() } else { S::zero() };
                    m.set(j, j, Complex::new(S::zero(), up - down));
                }
            }
            Family::U => {
                for j in 0..n {
                    m.set(j, j, Complex::new(S::zero(), it.next().unwrap().clone()));
                }
            }
            Family::So => {}
        }
        LieElement::unchecked(*self, m)
    }
}

/// An element of a compact matrix Lie algebra, stored as its anti-Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement<S> {
    algebra: AlgebraDescriptor,
    matrix: CMat<S>,
}

impl<S: Scalar> LieElement<S> {
    /// Validates the structural invariants of the family.
    pub fn new(algebra: AlgebraDescriptor, matrix: CMat<S>) -> Result<Self> {
        if matrix.n() != algebra.n {
            return Err(Error::Descriptor(format!(
                "{}x{} matrix given for {algebra}",
                matrix.n(),
                matrix.n()
            )));
        }
        let scale = matrix.max_abs().max(1.0);
        let tol = STRUCTURE_TOL;
        let herm = matrix.add(&matrix.adjoint());
        if !herm
            .entries()
            .iter()
            .all(|z| z.re.near_zero(scale, tol) && z.im.near_zero(scale, tol))
        {
            return Err(Error::Domain(format!(
                "matrix is not anti-Hermitian (in {algebra})"
            )));
        }
        match algebra.family {
            Family::Su => {
                let tr = matrix.trace();
                if !(tr.re.near_zero(scale, tol) && tr.im.near_zero(scale, tol)) {
                    return Err(Error::Domain(format!("trace is not zero (in {algebra})")));
                }
            }
            Family::So => {
                if !matrix.entries().iter().all(|z| z.im.near_zero(scale, tol)) {
                    return Err(Error::Domain(format!("matrix is not real (in {algebra})")));
                }
            }
            Family::U => {}
        }
        Ok(LieElement { algebra, matrix })
    }

    pub(crate) fn unchecked(algebra: AlgebraDescriptor, matrix: CMat<S>) -> Self {
        LieElement { algebra, matrix }
    }

    pub fn zero(algebra: AlgebraDescriptor) -> Self {
        Self::unchecked(algebra, CMat::zeros(algebra.n))
    }

    /// `i·diag(values)`; the values must sum to zero for su(n).
    pub fn i_diag(algebra: AlgebraDescriptor, values: &[S]) -> Result<Self> {
        if algebra.family == Family::So {
            return Err(Error::Domain(
                "so(n) has no imaginary diagonal elements".into(),
            ));
        }
        Self::new(algebra, CMat::i_diag(values))
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.algebra
    }

    pub fn matrix(&self) -> &CMat<S> {
        &self.matrix
    }

    pub fn mode(&self) -> Mode {
        S::MODE
    }

    pub fn coords(&self) -> Vec<S> {
        self.algebra.coords(&self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::Descriptor(format!(
                "operands live in {} and {}",
                self.algebra, other.algebra
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::unchecked(
            self.algebra,
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::unchecked(
            self.algebra,
            self.matrix.sub(&other.matrix),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::unchecked(self.algebra, self.matrix.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::unchecked(self.algebra, self.matrix.scale(s))
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::unchecked(
            self.algebra,
            self.matrix.commutator(&other.matrix),
        ))
    }

    pub fn frob_norm(&self) -> f64 {
        self.matrix.frob_norm()
    }

    pub fn to_f64(&self) -> LieElement<f64> {
        LieElement::unchecked(self.algebra, self.matrix.to_f64())
    }

    /// Same matrix, read in another algebra (e.g. an su(n) element as a u(n) element).
    pub fn reinterpret(&self, algebra: AlgebraDescriptor) -> Result<Self> {
        Self::new(algebra, self.matrix.clone())
    }

    /// Linear combination `sum c_k B_k`.
    pub fn combination(algebra: AlgebraDescriptor, coeffs: &[S], elems: &[Self]) -> Self {
        let mut m = CMat::zeros(algebra.n);
        for (c, e) in coeffs.iter().zip(elems) {
            if !c.is_zero() {
                m = m.add(&e.matrix.scale(c));
            }
        }
        Self::unchecked(algebra, m)
    }
}

impl LieElement<f64> {
    /// Projects an arbitrary float matrix onto the algebra: anti-Hermitian part,
    /// trace removed for su(n), real part for so(n).
    pub fn project(algebra: AlgebraDescriptor, m: &CMat<f64>) -> Self {
        let n = algebra.n;
        let mut a = m.sub(&m.adjoint()).scale(&0.5);
        match algebra.family {
            Family::Su => {
                let shift = a.trace() / n as f64;
                for i in 0..n {
                    let v = a.get(i, i) - shift;
                    a.set(i, i, v);
                }
            }
            Family::So => {
                a = a.map(|z| Complex::new(z.re, 0.0));
            }
            Family::U => {}
        }
        Self::unchecked(algebra, a)
    }
}

pub fn bracket<S: Scalar>(x: &LieElement<S>, y: &LieElement<S>) -> Result<LieElement<S>> {
    x.bracket(y)
}

/// `tr(ad X ∘ ad Y)`, computed in the canonical basis.
pub fn killing_form<S: Scalar>(x: &LieElement<S>, y: &LieElement<S>) -> Result<S> {
    x.check_same(y)?;
    let a = x.algebra;
    let mut acc = S::zero();
    for (b, basis) in a.basis::<S>().iter().enumerate() {
        let inner = y.matrix.commutator(&basis.matrix);
        let outer = x.matrix.commutator(&inner);
        acc = acc + a.coords(&outer)[b].clone();
    }
    Ok(acc)
}

/// `2n · Re tr(XY)`; the Killing form of su(n) in closed form.
pub fn trace_form<S: Scalar>(x: &LieElement<S>, y: &LieElement<S>) -> S {
    S::from_i64(2 * x.algebra.n as i64) * x.matrix.re_trace_product(&y.matrix)
}

/// Nondegenerate invariant scalar product: the Killing form on su(n) and so(n),
/// and Killing plus `2 trX trY` on u(n) (which equals `2n tr XY` there).
pub fn scalar_product<S: Scalar>(x: &LieElement<S>, y: &LieElement<S>) -> Result<S> {
    let k = killing_form(x, y)?;
    Ok(match x.algebra.family {
        Family::U => {
            let p = x.matrix.trace() * y.matrix.trace();
            k + S::from_i64(2) * p.re
        }
        _ => k,
    })
}

/// Gram matrix of the scalar product on the canonical basis.
pub fn gram_matrix<S: Scalar>(a: AlgebraDescriptor) -> Vec<Vec<S>> {
    let basis = a.basis::<S>();
    let d = basis.len();
    let mut g = vec![vec![S::zero(); d]; d];
    for i in 0..d {
        for j in i..d {
            let v = scalar_product(&basis[i], &basis[j]).expect("same algebra");
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    g
}

/// Finite real-linear span with an independent basis.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    algebra: AlgebraDescriptor,
    basis: Vec<LieElement<S>>,
}

impl<S: Scalar> Subspace<S> {
    /// Span of `elems`, reduced to an independent subset (first-come order).
    pub fn span(algebra: AlgebraDescriptor, elems: &[LieElement<S>]) -> Result<Self> {
        if let Some(bad) = elems.iter().find(|e| e.algebra != algebra) {
            return Err(Error::Descriptor(format!(
                "element of {} in a subspace of {algebra}",
                bad.algebra
            )));
        }
        let coords: Vec<Vec<S>> = elems.iter().map(|e| e.coords()).collect();
        let keep = crate::linalg::independent_subset(&coords);
        Ok(Subspace {
            algebra,
            basis: keep.into_iter().map(|i| elems[i].clone()).collect(),
        })
    }

    pub fn zero(algebra: AlgebraDescriptor) -> Self {
        Subspace {
            algebra,
            basis: Vec::new(),
        }
    }

    pub fn whole(algebra: AlgebraDescriptor) -> Self {
        Subspace {
            algebra,
            basis: algebra.basis(),
        }
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.algebra
    }

    pub fn basis(&self) -> &[LieElement<S>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn coord_rows(&self) -> Vec<Vec<S>> {
        self.basis.iter().map(|b| b.coords()).collect()
    }

    pub fn contains(&self, x: &LieElement<S>) -> bool {
        if x.algebra != self.algebra {
            return false;
        }
        let v = x.coords();
        match S::MODE {
            Mode::Exact => {
                let mut rows = self.coord_rows();
                rows.push(v);
                S::rank(&rows) == self.rank()
            }
            Mode::Float => {
                let basis: Vec<Vec<f64>> = self
                    .basis
                    .iter()
                    .map(|b| b.coords().iter().map(|c| c.to_f64()).collect())
                    .collect();
                let vf: Vec<f64> = v.iter().map(|c| c.to_f64()).collect();
                let norm = vf.iter().map(|c| c * c).sum::<f64>().sqrt();
                crate::linalg::projection_residual(&basis, &vf) <= SPAN_TOL * norm.max(1.0)
            }
        }
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn same_span(&self, other: &Subspace<S>) -> bool {
        self.rank() == other.rank() && self.contains_subspace(other)
    }

    /// `{X : <X, B> = 0 for all B}` under the invariant scalar product.
    pub fn orthogonal_complement(&self) -> Subspace<S> {
        let ambient = self.algebra.basis::<S>();
        let rows: Vec<Vec<S>> = self
            .basis
            .iter()
            .map(|b| {
                ambient
                    .iter()
                    .map(|a| scalar_product(a, b).expect("same algebra"))
                    .collect()
            })
            .collect();
        let d = ambient.len();
        let ns = if rows.is_empty() {
            identity_rows::<S>(d)
        } else {
            S::nullspace(&rows, d)
        };
        let elems: Vec<LieElement<S>> = ns
            .iter()
            .map(|c| LieElement::combination(self.algebra, c, &ambient))
            .collect();
        Subspace {
            algebra: self.algebra,
            basis: elems,
        }
    }
}

fn identity_rows<S: Scalar>(d: usize) -> Vec<Vec<S>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { S::one() } else { S::zero() })
                .collect()
        })
        .collect()
}

/// Bracket-closed subspace.
#[derive(Clone, Debug)]
pub struct Subalgebra<S>(Subspace<S>);

impl<S: Scalar> std::ops::Deref for Subalgebra<S> {
    type Target = Subspace<S>;
    fn deref(&self) -> &Subspace<S> {
        &self.0
    }
}

impl<S: Scalar> Subalgebra<S> {
    /// Checks bracket closure on every basis pair.
    pub fn new(space: Subspace<S>) -> Result<Self> {
        let b = space.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let c = b[i].bracket(&b[j])?;
                if !space.contains(&c) {
                    return Err(Error::Precondition(format!(
                        "subspace is not bracket-closed: [B{i}, B{j}] leaves the span"
                    )));
                }
            }
        }
        Ok(Subalgebra(space))
    }

    pub fn generated_by(algebra: AlgebraDescriptor, elems: &[LieElement<S>]) -> Result<Self> {
        Self::new(Subspace::span(algebra, elems)?)
    }

    pub fn whole(algebra: AlgebraDescriptor) -> Self {
        Subalgebra(Subspace::whole(algebra))
    }

    pub fn zero(algebra: AlgebraDescriptor) -> Self {
        Subalgebra(Subspace::zero(algebra))
    }

    pub fn space(&self) -> &Subspace<S> {
        &self.0
    }

    /// Diagonal (Cartan) torus of su(n) or u(n), or the standard block torus of so(n).
    pub fn torus(algebra: AlgebraDescriptor) -> Self {
        let n = algebra.n;
        let elems: Vec<LieElement<S>> = match algebra.family {
            Family::So => (0..n / 2)
                .map(|k| {
                    let mut m = CMat::zeros(n);
                    m.set(2 * k, 2 * k + 1, Complex::new(S::one(), S::zero()));
                    m.set(2 * k + 1, 2 * k, Complex::new(-S::one(), S::zero()));
                    LieElement::unchecked(algebra, m)
                })
                .collect(),
            _ => algebra
                .basis::<S>()
                .into_iter()
                .filter(|b| b.matrix.is_diagonal())
                .collect(),
        };
        Subalgebra(Subspace {
            algebra,
            basis: elems,
        })
    }

    /// Span of all brackets of basis pairs.
    pub fn derived(&self) -> Subalgebra<S> {
        let b = self.basis();
        let mut brackets = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                brackets.push(b[i].bracket(&b[j]).expect("same algebra"));
            }
        }
        let span = Subspace::span(self.algebra(), &brackets).expect("same algebra");
        Subalgebra(span)
    }

    /// Largest residual-free check that `[self, other] ⊆ other`.
    pub fn normalizes(&self, ideal: &Subspace<S>) -> bool {
        self.basis().iter().all(|a| {
            ideal
                .basis()
                .iter()
                .all(|d| ideal.contains(&a.bracket(d).expect("same algebra")))
        })
    }
}

pub fn derived_subalgebra<S: Scalar>(l: &Subalgebra<S>) -> Subalgebra<S> {
    l.derived()
}

pub fn orthogonal_complement<S: Scalar>(s: &Subspace<S>) -> Subspace<S> {
    s.orthogonal_complement()
}

fn kernel_of_brackets<S: Scalar>(
    algebra: AlgebraDescriptor,
    targets: &[LieElement<S>],
) -> Vec<LieElement<S>> {
    let basis = algebra.basis::<S>();
    let d = basis.len();
    // Row per output coordinate of each bracket, column per basis element.
    let cols: Vec<Vec<S>> = basis
        .iter()
        .map(|b| {
            targets
                .iter()
                .flat_map(|t| algebra.coords(&b.matrix.commutator(&t.matrix)))
                .collect()
        })
        .collect();
    let nrows = cols.first().map_or(0, Vec::len);
    let rows: Vec<Vec<S>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ns = if rows.is_empty() {
        identity_rows::<S>(d)
    } else {
        S::nullspace(&rows, d)
    };
    ns.iter()
        .map(|c| LieElement::combination(algebra, c, &basis))
        .collect()
}

/// `{X : [X, Y] = 0 for all Y}`.
pub fn center<S: Scalar>(algebra: AlgebraDescriptor) -> Subspace<S> {
    let basis = algebra.basis::<S>();
    Subspace {
        algebra,
        basis: kernel_of_brackets(algebra, &basis),
    }
}

/// Kernel of `ad(X)`.
pub fn centralizer<S: Scalar>(x: &LieElement<S>) -> Subalgebra<S> {
    Subalgebra(Subspace {
        algebra: x.algebra,
        basis: kernel_of_brackets(x.algebra, std::slice::from_ref(x)),
    })
}

/// Eigenvalue data used by the spectral regularity test.
struct EigenCounts {
    distinct: usize,
    zero_mult: usize,
}

fn exact_eigen_counts<S: Scalar>(m: &CMat<S>) -> EigenCounts {
    let n = m.n();
    let complex_rank = |vectors: Vec<Vec<Complex<S>>>| -> usize {
        let mut rows = Vec::with_capacity(2 * vectors.len());
        for v in vectors {
            let re: Vec<S> = v.iter().map(|z| z.re.clone()).collect();
            let im: Vec<S> = v.iter().map(|z| z.im.clone()).collect();
            let neg_im: Vec<S> = im.iter().map(|x| -x.clone()).collect();
            rows.push([re.clone(), im].concat());
            rows.push([neg_im, re].concat());
        }
        S::rank(&rows) / 2
    };
    // Normal matrices are diagonalizable: #distinct eigenvalues = degree of the
    // minimal polynomial = complex rank of {I, X, ..., X^{n-1}}.
    let powers: Vec<Vec<Complex<S>>> = (0..n).map(|k| m.pow(k).entries().to_vec()).collect();
    let distinct = complex_rank(powers);
    let zero_mult = n - complex_rank(m.rows());
    EigenCounts {
        distinct,
        zero_mult,
    }
}

fn float_eigen_counts(m: &CMat<f64>) -> EigenCounts {
    let values = spectral::spectrum(m);
    let tol = SPECTRAL_TOL * spectral::spectral_radius(&values);
    EigenCounts {
        distinct: spectral::cluster_sizes(&values, tol).len(),
        zero_mult: values.iter().filter(|v| v.abs() <= tol).count(),
    }
}

/// Eigenvalue-based regularity verdict.
pub fn spectrally_regular<S: Scalar>(x: &LieElement<S>) -> bool {
    let c = match S::MODE {
        Mode::Exact => exact_eigen_counts(&x.matrix),
        Mode::Float => float_eigen_counts(&x.matrix.to_f64()),
    };
    let n = x.algebra.n;
    match x.algebra.family {
        Family::Su | Family::U => c.distinct == n,
        Family::So => {
            let nonzero_distinct = c.distinct - usize::from(c.zero_mult > 0);
            let max_zero = if n.is_multiple_of(2) { 2 } else { 1 };
            nonzero_distinct == n - c.zero_mult && c.zero_mult <= max_zero
        }
    }
}

/// Regular iff the centralizer has minimal dimension. Runs both the spectral and the
/// centralizer test and fails if they disagree.
pub fn is_regular<S: Scalar>(x: &LieElement<S>) -> Result<bool> {
    let spectral = spectrally_regular(x);
    let centralizer = centralizer(x).rank() == x.algebra.rank();
    if spectral != centralizer {
        return Err(Error::RegularityDisagreement {
            spectral,
            centralizer,
        });
    }
    Ok(spectral)
}
