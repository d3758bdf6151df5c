//! Adjoint orbits as symplectic manifolds: membership, tangent ranks, the KKS form
//! and the moment-map and equivariance identities of the invariant scalar product.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Unitary;
use crate::lie::{scalar_product, AlgebraDescriptor, Family, LieElement, Subalgebra, SPECTRAL_TOL};
use crate::matrix::{poly_from_roots, CMat};
use crate::scalar::{Mode, Scalar, Q};
use crate::spectral;
use crate::weyl::FlagType;

/// `Ad(U)(i·diag(spectrum))`, identified by its spectrum sorted descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointOrbit {
    algebra: AlgebraDescriptor,
    spectrum: Vec<Q>,
}

#[derive(Serialize)]
struct OrbitJson<'a> {
    algebra: &'a AlgebraDescriptor,
    spectrum: Vec<String>,
}

impl Serialize for AdjointOrbit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrbitJson {
            algebra: &self.algebra,
            spectrum: self.spectrum.iter().map(|q| q.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl AdjointOrbit {
    /// Orbit of `i·diag(spectrum)`; the spectrum must sum to zero for su(n).
    pub fn new(algebra: AlgebraDescriptor, spectrum: &[Q]) -> Result<Self> {
        if algebra.family == Family::So {
            return Err(Error::Domain(
                "orbits are identified by imaginary spectra only in su(n) and u(n)".into(),
            ));
        }
        if spectrum.len() != algebra.n {
            return Err(Error::Descriptor(format!(
                "{} eigenvalues given for {algebra}",
                spectrum.len()
            )));
        }
        if algebra.family == Family::Su && !spectrum.iter().cloned().sum::<Q>().is_zero() {
            return Err(Error::Domain(
                "su(n) orbit spectrum must sum to zero".into(),
            ));
        }
        let mut s = spectrum.to_vec();
        s.sort_by(|a, b| b.cmp(a));
        Ok(AdjointOrbit {
            algebra,
            spectrum: s,
        })
    }

    /// Orbit through a diagonal element.
    pub fn through_diagonal(h: &LieElement<Q>) -> Result<Self> {
        let m = h.matrix();
        if !m.is_diagonal() {
            return Err(Error::Domain("expected a diagonal element".into()));
        }
        let s: Vec<Q> = (0..m.n()).map(|i| m.get(i, i).im.clone()).collect();
        Self::new(h.algebra(), &s)
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.algebra
    }

    pub fn spectrum(&self) -> &[Q] {
        &self.spectrum
    }

    pub fn flag_type(&self) -> FlagType {
        FlagType::from_spectrum(&self.spectrum).expect("nonempty spectrum")
    }

    pub fn flag_dimension(&self) -> usize {
        crate::weyl::flag_dimension(&self.flag_type())
    }

    /// Orbit of `-x`.
    pub fn dual(&self) -> AdjointOrbit {
        let s: Vec<Q> = self.spectrum.iter().map(|v| -v.clone()).collect();
        Self::new(self.algebra, &s).expect("negation keeps the trace condition")
    }

    /// `i·diag(spectrum)` in descending order.
    pub fn representative<S: Scalar>(&self) -> LieElement<S> {
        let v: Vec<S> = self.spectrum.iter().map(S::from_q).collect();
        LieElement::i_diag(self.algebra, &v).expect("valid spectrum")
    }

    pub fn spectral_radius(&self) -> f64 {
        self.spectrum
            .iter()
            .map(|q| q.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Whether `x` lies on `orbit`: exact characteristic polynomials on the exact track,
/// sorted spectra within `SPECTRAL_TOL · spectralRadius` on the float track.
pub fn orbit_membership<S: Scalar>(x: &LieElement<S>, orbit: &AdjointOrbit) -> bool {
    orbit_membership_tol(x, orbit, SPECTRAL_TOL)
}

pub fn orbit_membership_tol<S: Scalar>(x: &LieElement<S>, orbit: &AdjointOrbit, rel: f64) -> bool {
    if x.algebra().n != orbit.algebra.n {
        return false;
    }
    match S::MODE {
        Mode::Exact => {
            let roots: Vec<Complex<S>> = orbit
                .spectrum
                .iter()
                .map(|q| Complex::new(S::zero(), S::from_q(q)))
                .collect();
            x.matrix().char_poly() == poly_from_roots(&roots)
        }
        Mode::Float => {
            let got = spectral::spectrum(&x.matrix().to_f64());
            let radius = orbit.spectral_radius().max(spectral::spectral_radius(&got));
            let tol = rel * radius;
            got.iter()
                .zip(&orbit.spectrum)
                .all(|(a, b)| (a - b.to_f64()).abs() <= tol)
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitPoint<S> {
    orbit: AdjointOrbit,
    element: LieElement<S>,
}

impl<S: Scalar> OrbitPoint<S> {
    pub fn new(orbit: AdjointOrbit, element: LieElement<S>) -> Result<Self> {
        Self::new_with_tol(orbit, element, SPECTRAL_TOL)
    }

    /// [`OrbitPoint::new`] with a relative spectral tolerance for the float track.
    pub fn new_with_tol(orbit: AdjointOrbit, element: LieElement<S>, rel: f64) -> Result<Self> {
        if element.algebra() != orbit.algebra {
            return Err(Error::Descriptor(format!(
                "point in {} for an orbit in {}",
                element.algebra(),
                orbit.algebra
            )));
        }
        if !orbit_membership_tol(&element, &orbit, rel) {
            return Err(Error::Domain("element is not on the orbit".into()));
        }
        Ok(OrbitPoint { orbit, element })
    }

    /// The diagonal representative of the orbit.
    pub fn base(orbit: AdjointOrbit) -> Self {
        let element = orbit.representative();
        OrbitPoint { orbit, element }
    }

    /// Orbit through a diagonal element, at that element.
    pub fn at_diagonal(h: &LieElement<Q>) -> Result<Self> {
        let orbit = AdjointOrbit::through_diagonal(h)?;
        let element = LieElement::new(
            h.algebra(),
            CMat::from_fn(h.algebra().n, |i, j| {
                let z = h.matrix().get(i, j);
                Complex::new(S::from_q(&z.re), S::from_q(&z.im))
            }),
        )?;
        Ok(OrbitPoint { orbit, element })
    }

    pub fn orbit(&self) -> &AdjointOrbit {
        &self.orbit
    }

    pub fn element(&self) -> &LieElement<S> {
        &self.element
    }

    pub fn to_f64(&self) -> OrbitPoint<f64> {
        OrbitPoint {
            orbit: self.orbit.clone(),
            element: self.element.to_f64(),
        }
    }
}

impl OrbitPoint<f64> {
    /// `Ad(g)x`, staying on the same orbit.
    pub fn moved(&self, g: &Unitary) -> Self {
        OrbitPoint {
            orbit: self.orbit.clone(),
            element: g.ad(&self.element),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProductOrbitPoint<S> {
    pub left: OrbitPoint<S>,
    pub right: OrbitPoint<S>,
}

/// `ω_x(X̃, Ỹ) = <x, [X, Y]>`
pub fn kks_form<S: Scalar>(x: &OrbitPoint<S>, a: &LieElement<S>, b: &LieElement<S>) -> Result<S> {
    scalar_product(&x.element, &a.bracket(b)?)
}

/// Dimension of the `L`-orbit through `x`: rank of `X ↦ [X, x]` on `l`.
pub fn orbit_tangent_rank<S: Scalar>(x: &OrbitPoint<S>, l: &Subalgebra<S>) -> Result<usize> {
    tangent_rank_at(&x.element, l)
}

pub fn tangent_rank_at<S: Scalar>(x: &LieElement<S>, l: &Subalgebra<S>) -> Result<usize> {
    if l.algebra() != x.algebra() {
        return Err(Error::Descriptor(format!(
            "subalgebra of {} acting on a point of {}",
            l.algebra(),
            x.algebra()
        )));
    }
    let rows: Vec<Vec<S>> = l
        .basis()
        .iter()
        .map(|b| b.bracket(x).map(|c| c.coords()))
        .collect::<Result<_>>()?;
    Ok(S::rank(&rows))
}

pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-3;

/// `| d/dt <Ad(e^{tZ})x, Y> |_{t=0} - ω_x(Y, Z) |` with a central difference of step `h`.
pub fn moment_map_check(
    x: &OrbitPoint<f64>,
    y: &LieElement<f64>,
    z: &LieElement<f64>,
    h: f64,
) -> Result<f64> {
    if !(MIN_STEP..=MAX_STEP).contains(&h) {
        return Err(Error::Domain(format!(
            "finite-difference step {h} outside [{MIN_STEP}, {MAX_STEP}]"
        )));
    }
    let f = |t: f64| -> Result<f64> {
        let g = Unitary::exp(&z.matrix().scale(&t));
        scalar_product(&g.ad(&x.element), y)
    };
    let derivative = (f(h)? - f(-h)?) / (2.0 * h);
    Ok((derivative - kks_form(x, y, z)?).abs())
}

/// `|<Ad(g)X, Ad(g)Y> - <X, Y>|`; `g` must be unitary, with determinant 1 for su(n).
pub fn phi_equivariance_check(
    g: &CMat<f64>,
    x: &LieElement<f64>,
    y: &LieElement<f64>,
) -> Result<f64> {
    let a = x.algebra();
    let g = match a.family {
        Family::Su => Unitary::new_special(g.clone())?,
        _ => Unitary::new(g.clone())?,
    };
    let before = scalar_product(x, y)?;
    let after = scalar_product(&g.ad(x), &g.ad(y))?;
    Ok((after - before).abs())
}

/// Rank of the Gram matrix `ω_x(B_i, B_j)` over the ambient basis.
pub fn nondegeneracy_check<S: Scalar>(x: &OrbitPoint<S>) -> Result<usize> {
    let basis = x.element.algebra().basis::<S>();
    let d = basis.len();
    let mut g = vec![vec![S::zero(); d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let v = kks_form(x, &basis[i], &basis[j])?;
            g[j][i] = -v.clone();
            g[i][j] = v;
        }
    }
    Ok(S::rank(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::centralizer;
    use crate::scalar::qi;

    fn su3_orbit(v: &[i64]) -> AdjointOrbit {
        let s: Vec<Q> = v.iter().map(|&x| qi(x)).collect();
        AdjointOrbit::new(AlgebraDescriptor::su(3), &s).unwrap()
    }

    #[test]
    fn antisymmetric_generator_is_on_maximal_flag() {
        let a = AlgebraDescriptor::su(3);
        let x = a.basis::<Q>()[0].clone(); // E12 - E21, eigenvalues i, -i, 0
        assert!(orbit_membership(&x, &su3_orbit(&[1, 0, -1])));
        assert!(orbit_membership(&x.to_f64(), &su3_orbit(&[1, 0, -1])));
        assert!(!orbit_membership(&x, &su3_orbit(&[1, 1, -2])));
    }

    #[test]
    fn different_spectra_are_not_conjugate() {
        let p = OrbitPoint::<Q>::base(su3_orbit(&[2, -1, -1]));
        assert!(!orbit_membership(p.element(), &su3_orbit(&[1, 1, -2])));
    }

    #[test]
    fn nondegeneracy_ranks() {
        assert_eq!(
            nondegeneracy_check(&OrbitPoint::<Q>::base(su3_orbit(&[1, 0, -1]))).unwrap(),
            6
        );
        assert_eq!(
            nondegeneracy_check(&OrbitPoint::<Q>::base(su3_orbit(&[1, 1, -2]))).unwrap(),
            4
        );
    }

    #[test]
    fn centralizer_gives_zero_tangent_rank() {
        let p = OrbitPoint::<Q>::base(su3_orbit(&[2, -1, -1]));
        let c = centralizer(p.element());
        assert_eq!(orbit_tangent_rank(&p, &c).unwrap(), 0);
    }

    #[test]
    fn moment_step_is_guarded() {
        let p = OrbitPoint::<f64>::base(su3_orbit(&[1, 0, -1]));
        let y = p.element().clone();
        assert!(matches!(
            moment_map_check(&p, &y, &y, 0.1),
            Err(Error::Domain(_))
        ));
    }
}
