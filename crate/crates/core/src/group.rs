//! Unitary group elements (float track): exponential, principal logarithm,
//! adjoint action, Haar sampling.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::lie::{AlgebraDescriptor, Family, LieElement};
use crate::matrix::CMat;
use crate::spectral::eigh_skew;

/// `max |g†g - I|` allowed for a unitary matrix.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    m: CMat<f64>,
}

/// Principal logarithm with an optional note about the branch choice.
#[derive(Clone, Debug)]
pub struct UnitaryLog {
    pub generator: CMat<f64>,
    pub branch_warning: Option<String>,
}

impl Unitary {
    pub fn new(m: CMat<f64>) -> Result<Self> {
        let dev = m.adjoint().mul(&m).max_diff(&CMat::identity(m.n()));
        if dev.is_nan() || dev > UNITARY_TOL {
            return Err(Error::Domain(format!(
                "matrix is not unitary (max |g†g - I| = {dev:.3e})"
            )));
        }
        Ok(Unitary { m })
    }

    /// Unitary with determinant 1.
    pub fn new_special(m: CMat<f64>) -> Result<Self> {
        let u = Self::new(m)?;
        let d = u.det();
        if (d - Complex64::new(1.0, 0.0)).norm() > UNITARY_TOL {
            return Err(Error::Domain(format!(
                "determinant is {:.6}{:+.6}i, expected 1",
                d.re, d.im
            )));
        }
        Ok(u)
    }

    pub fn identity(n: usize) -> Self {
        Unitary {
            m: CMat::identity(n),
        }
    }

    pub fn matrix(&self) -> &CMat<f64> {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn det(&self) -> Complex64 {
        self.m.to_na().determinant()
    }

    pub fn inverse(&self) -> Self {
        Unitary {
            m: self.m.adjoint(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Unitary {
            m: self.m.mul(&other.m),
        }
    }

    /// `e^X` for anti-Hermitian `X`, via the Hermitian eigen-decomposition of `-iX`.
    pub fn exp(x: &CMat<f64>) -> Self {
        let e = eigh_skew(x);
        let n = x.n();
        let d = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, e.values[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let g = &e.vectors * d * e.vectors.adjoint();
        Unitary {
            m: CMat::from_na(&g),
        }
    }

    pub fn exp_element(x: &LieElement<f64>) -> Self {
        Self::exp(x.matrix())
    }

    /// Principal logarithm: eigen-angles in `(-π, π]`. The result is anti-Hermitian
    /// and may carry trace even when `self` has determinant 1.
    pub fn log(&self) -> UnitaryLog {
        let n = self.n();
        let schur = Schur::new(self.m.to_na());
        let (q, t) = schur.unpack();
        let mut at_minus_one = 0;
        let angles: Vec<f64> = (0..n)
            .map(|i| {
                let z = t[(i, i)];
                if (z + Complex64::new(1.0, 0.0)).norm() < 1e-8 {
                    at_minus_one += 1;
                }
                let a = z.arg();
                if a <= -PI + 1e-12 {
                    PI
                } else {
                    a
                }
            })
            .collect();
        let d = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(0.0, angles[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let x = &q * d * q.adjoint();
        let x = CMat::from_na(&x);
        let x = x.sub(&x.adjoint()).scale(&0.5);
        let branch_warning = (at_minus_one >= 2).then(|| {
            format!(
                "eigenvalue -1 has multiplicity {at_minus_one}; principal branch (angle +π) chosen, \
                 the logarithm is not unique"
            )
        });
        UnitaryLog {
            generator: x,
            branch_warning,
        }
    }

    /// `g X g†`
    pub fn ad_matrix(&self, x: &CMat<f64>) -> CMat<f64> {
        self.m.mul(x).mul(&self.m.adjoint())
    }

    /// `Ad(g)X`, projected back onto the algebra of `x`.
    pub fn ad(&self, x: &LieElement<f64>) -> LieElement<f64> {
        LieElement::project(x.algebra(), &self.ad_matrix(x.matrix()))
    }

    /// Haar-distributed element of U(n), or of SU(n) when `special`.
    pub fn haar<R: Rng + ?Sized>(n: usize, special: bool, rng: &mut R) -> Self {
        let g = DMatrix::from_fn(n, n, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        let (q, r) = g.qr().unpack();
        let mut q = q;
        for j in 0..n {
            let rjj = r[(j, j)];
            let phase = if rjj.norm() > 0.0 {
                rjj / rjj.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        if special {
            let d = q.determinant();
            let fix = (d / d.norm()).conj();
            for i in 0..n {
                q[(i, 0)] *= fix;
            }
        }
        Unitary {
            m: CMat::from_na(&q),
        }
    }

    /// Group element matching an algebra: SU(n) for su, SO(n) for so, U(n) for u.
    pub fn random_for<R: Rng + ?Sized>(a: AlgebraDescriptor, rng: &mut R) -> Self {
        match a.family {
            Family::Su => Self::haar(a.n, true, rng),
            Family::U => Self::haar(a.n, false, rng),
            Family::So => {
                let x = crate::sampling::random_element(a, rng);
                Self::exp(x.matrix())
            }
        }
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`, with one sign flipped
    /// when needed so that the determinant is 1.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = CMat::<f64>::zeros(n);
        for (j, &p) in perm.iter().enumerate() {
            m.set(p, j, Complex64::new(1.0, 0.0));
        }
        let mut u = Unitary { m };
        if u.det().re < 0.0 {
            let v = u.m.get(perm[0], 0) * -1.0;
            u.m.set(perm[0], 0, v);
        }
        u
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_is_unitary_and_special() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..5 {
            let g = Unitary::haar(n, true, &mut rng);
            assert!(Unitary::new_special(g.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Unitary::haar(3, false, &mut rng);
        let l = g.log();
        assert!(l.branch_warning.is_none());
        let back = Unitary::exp(&l.generator);
        assert!(back.matrix().max_diff(g.matrix()) < 1e-10);
    }

    #[test]
    fn log_of_double_minus_one_warns() {
        let m = CMat::i_diag(&[PI, PI, 0.0]);
        let g = Unitary::exp(&m);
        let l = g.log();
        assert!(l.branch_warning.is_some());
        assert!(Unitary::exp(&l.generator).matrix().max_diff(g.matrix()) < 1e-10);
    }

    #[test]
    fn permutations_have_det_one() {
        let p = Unitary::permutation(&[1, 0, 2]);
        assert!((p.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let d = CMat::i_diag(&[3.0, 2.0, 1.0]);
        let moved = p.ad_matrix(&d);
        assert_eq!(moved, CMat::i_diag(&[2.0, 3.0, 1.0]));
    }
}
