//! Dense square complex matrices over either scalar track.

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type C<S> = Complex<S>;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat<S> {
    n: usize,
    data: Vec<Complex<S>>,
}

impl<S: Scalar> CMat<S> {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            data: vec![Complex::new(S::zero(), S::zero()); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex::new(S::one(), S::zero())
            } else {
                Complex::new(S::zero(), S::zero())
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<S>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        CMat { n, data }
    }

    /// `i·diag(values)`, the standard torus element.
    pub fn i_diag(values: &[S]) -> Self {
        let n = values.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex::new(S::zero(), values[i].clone())
            } else {
                Complex::new(S::zero(), S::zero())
            }
        })
    }

    pub fn from_rows(rows: Vec<Vec<Complex<S>>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(CMat {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex<S> {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<S>) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Complex<S>] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Complex<S>>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.scale(s.clone()))
    }

    pub fn scale_c(&self, s: &Complex<S>) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex<S> {
        (0..self.n).fold(Complex::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `XY - YX`
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Real trace form `Re tr(XY)`.
    pub fn re_trace_product(&self, other: &Self) -> S {
        let n = self.n;
        let mut acc = S::zero();
        for i in 0..n {
            for k in 0..n {
                let p = self.get(i, k).clone() * other.get(k, i).clone();
                acc = acc + p.re;
            }
        }
        acc
    }

    /// Squared Frobenius norm.
    pub fn norm_sqr(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn frob_norm(&self) -> f64 {
        self.norm_sqr().to_f64().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.re.to_f64().hypot(z.im.to_f64()))
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> CMat<f64> {
        CMat {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|z| Complex64::new(z.re.to_f64(), z.im.to_f64()))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Complex<S>) -> Complex<S>) -> Self {
        CMat {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Complex<S>, &Complex<S>) -> Complex<S>) -> Self {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        CMat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Real and imaginary parts of every entry, row-major.
    pub fn realified(&self) -> Vec<S> {
        self.data
            .iter()
            .flat_map(|z| [z.re.clone(), z.im.clone()])
            .collect()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Characteristic polynomial `det(λI - X)` by Faddeev–LeVerrier,
    /// coefficients from the constant term up to the leading 1.
    pub fn char_poly(&self) -> Vec<Complex<S>> {
        let n = self.n;
        let mut coeffs = vec![Complex::zero(); n + 1];
        coeffs[n] = Complex::one();
        let mut m = Self::zeros(n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale_c(&coeffs[n - k + 1]));
            let tr = self.mul(&m).trace();
            let kk = S::from_i64(k as i64);
            coeffs[n - k] = Complex::new(-tr.re / kk.clone(), -tr.im / kk);
        }
        coeffs
    }
}

impl CMat<f64> {
    pub fn to_na(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }

    pub fn from_na(m: &DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        let n = m.nrows();
        Self::from_fn(n, |i, j| m[(i, j)])
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }
}

/// Multiplies out `prod (λ - r_j)`, constant term first.
pub fn poly_from_roots<S: Scalar>(roots: &[Complex<S>]) -> Vec<Complex<S>> {
    let mut p: Vec<Complex<S>> = vec![Complex::one()];
    for r in roots {
        let mut next = vec![Complex::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + c.clone();
            next[k] = next[k].clone() - c.clone() * r.clone();
        }
        p = next;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    fn cq(re: i64, im: i64) -> Complex<Q> {
        Complex::new(qi(re), qi(im))
    }

    #[test]
    fn commutator_of_su2_generators() {
        // [E12 - E21, i(E12 + E21)] = 2i(E11 - E22)
        let x = CMat::from_rows(vec![vec![cq(0, 0), cq(1, 0)], vec![cq(-1, 0), cq(0, 0)]]).unwrap();
        let y = CMat::from_rows(vec![vec![cq(0, 0), cq(0, 1)], vec![cq(0, 1), cq(0, 0)]]).unwrap();
        let expect =
            CMat::from_rows(vec![vec![cq(0, 2), cq(0, 0)], vec![cq(0, 0), cq(0, -2)]]).unwrap();
        assert_eq!(x.commutator(&y), expect);
    }

    #[test]
    fn char_poly_matches_roots() {
        let d = CMat::<Q>::i_diag(&[qi(2), qi(-1), qi(-1)]);
        let roots: Vec<_> = [2, -1, -1].iter().map(|&v| cq(0, v)).collect();
        assert_eq!(d.char_poly(), poly_from_roots(&roots));
        // λ^3 + 3λ + 2i for a = 1
        assert_eq!(d.char_poly(), vec![cq(0, 2), cq(3, 0), cq(0, 0), cq(1, 0)]);
    }

    #[test]
    fn nalgebra_round_trip() {
        let m = CMat::from_fn(3, |i, j| Complex64::new(i as f64, j as f64));
        assert_eq!(CMat::from_na(&m.to_na()), m);
    }
}
