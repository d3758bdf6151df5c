//! Infinitesimal tightness of Lagrangian orbits: singular points of fundamental
//! fields, transversality tests, fixed-point counts against Betti sums.

use nalgebra::Schur;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::Unitary;
use crate::json::element_json;
use crate::lie::{is_regular, AlgebraDescriptor, Family, LieElement};
use crate::linalg::REL_RANK_TOL;
use crate::matrix::CMat;
use crate::orbit::{AdjointOrbit, OrbitPoint, ProductOrbitPoint};
use crate::product::{graph_residual, ShiftedDiagonal};
use crate::scalar::Scalar;
use crate::weyl::{coset_count, weyl_orbit, FlagType};

/// Bracket-norm threshold for "commutes" and "field vanishes".
pub const BRACKET_TOL: f64 = 1e-9;
/// Sum of mod-2 Betti numbers of S³.
pub const S3_BETTI_SUM: usize = 2;
pub const MAX_PROBE_T: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Reason {
    RegularAndCentralizing,
    NotRegular,
    TangentNonvanishing,
    Other,
}

#[derive(Clone, Debug)]
pub enum SingularPoint {
    Flag(OrbitPoint<f64>),
    Product(ProductOrbitPoint<f64>),
}

impl SingularPoint {
    fn to_json(&self) -> Value {
        match self {
            SingularPoint::Flag(p) => json!([element_json(p.element())]),
            SingularPoint::Product(p) => {
                json!([
                    element_json(p.left.element()),
                    element_json(p.right.element())
                ])
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct TransversalityVerdict {
    pub transversal: bool,
    pub reason: Reason,
    pub singular_points: Vec<SingularPoint>,
    /// Largest fundamental-field norm over the singular points.
    pub max_field_at_singular: f64,
}

impl Serialize for TransversalityVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "transversal": self.transversal,
            "reason": self.reason,
            "singularPoints": self.singular_points.iter().map(SingularPoint::to_json).collect::<Vec<_>>(),
            "maxFieldAtSingular": self.max_field_at_singular,
        })
        .serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TightnessReport {
    pub fixed_points: usize,
    pub betti_sum: usize,
    pub tight: bool,
    pub verdict: TransversalityVerdict,
}

impl TightnessReport {
    fn new(betti_sum: usize, verdict: TransversalityVerdict) -> Self {
        let fixed_points = verdict.singular_points.len();
        TightnessReport {
            fixed_points,
            betti_sum,
            tight: fixed_points == betti_sum,
            verdict,
        }
    }
}

fn bracket_norm(a: &CMat<f64>, b: &CMat<f64>) -> f64 {
    a.commutator(b).frob_norm()
}

fn bracket_tol(a: &CMat<f64>, b: &CMat<f64>) -> f64 {
    BRACKET_TOL * (a.frob_norm() * b.frob_norm()).max(1.0)
}

fn orbit_for(a: AlgebraDescriptor, ft: &FlagType) -> Result<AdjointOrbit> {
    if ft.n() != a.n {
        return Err(Error::Descriptor(format!(
            "flag type of size {} in {a}",
            ft.n()
        )));
    }
    AdjointOrbit::new(a, &ft.expanded())
}

/// Zeros of the fundamental field of a regular `A` on the flag of type `ft`:
/// `V w(iH) V†` over the Weyl rearrangements, with `V` an eigenbasis of `A`.
pub fn singular_points_on_flag(a: &LieElement<f64>, ft: &FlagType) -> Result<Vec<OrbitPoint<f64>>> {
    let orbit = orbit_for(a.algebra(), ft)?;
    if !is_regular(a)? {
        return Err(Error::InfiniteSingularities(
            "the element is not regular, so its zero set on the flag is not finite".into(),
        ));
    }
    let v = CMat::from_na(&crate::spectral::eigh_skew(a.matrix()).vectors);
    points_in_basis(&v, &orbit, ft, a.matrix())
}

fn points_in_basis(
    v: &CMat<f64>,
    orbit: &AdjointOrbit,
    ft: &FlagType,
    a: &CMat<f64>,
) -> Result<Vec<OrbitPoint<f64>>> {
    let alg = orbit.algebra();
    weyl_orbit(ft)
        .iter()
        .map(|w| {
            let d: Vec<f64> = w.diagonal.iter().map(|q| q.to_f64()).collect();
            let x = v.mul(&CMat::i_diag(&d)).mul(&v.adjoint());
            let p = OrbitPoint::new(orbit.clone(), LieElement::project(alg, &x))?;
            let r = bracket_norm(a, p.element().matrix());
            if r > bracket_tol(a, p.element().matrix()) {
                return Err(Error::Inconclusive(format!(
                    "enumerated singular point has field norm {r:.3e}"
                )));
            }
            Ok(p)
        })
        .collect()
}

/// Transversality of `(Y, Z)` to the graph `{(x, -Ad(m)x)}`.
///
/// The field of `(Y, Z)` is tangent to the graph at `x` iff `[Y - Ad(m⁻¹)Z, x] = 0`,
/// so the tangency set is finite iff `W = Y - Ad(m⁻¹)Z` is regular; the field must
/// then vanish there, i.e. `Y` and `Ad(m⁻¹)Z` commute with every `V w(iH) V†`.
pub fn diagonal_pair_transversal(
    y: &LieElement<f64>,
    z: &LieElement<f64>,
    ft: &FlagType,
    d: &ShiftedDiagonal,
) -> Result<TransversalityVerdict> {
    let a = d.algebra();
    if y.algebra() != a || z.algebra() != a {
        return Err(Error::Descriptor(
            "Y and Z must live in the shift's algebra".into(),
        ));
    }
    let orbit = orbit_for(a, ft)?;
    let z_pulled = d.m().inverse().ad(z);
    let w = y.sub(&z_pulled)?;
    let not_transversal = |reason| TransversalityVerdict {
        transversal: false,
        reason,
        singular_points: Vec::new(),
        max_field_at_singular: 0.0,
    };
    if !is_regular(&w)? {
        return Ok(not_transversal(Reason::NotRegular));
    }
    let points = singular_points_on_flag(&w, ft)?;
    let mut worst: f64 = 0.0;
    for p in &points {
        let x = p.element().matrix();
        let fy = bracket_norm(y.matrix(), x);
        let fz = bracket_norm(z_pulled.matrix(), x);
        if fy > bracket_tol(y.matrix(), x) || fz > bracket_tol(z_pulled.matrix(), x) {
            return Ok(not_transversal(Reason::TangentNonvanishing));
        }
        worst = worst.max(fy.hypot(fz));
    }
    let dual = orbit.dual();
    let singular_points = points
        .into_iter()
        .map(|p| {
            let right = OrbitPoint::new(dual.clone(), d.m().ad(p.element()).neg())?;
            Ok(SingularPoint::Product(ProductOrbitPoint { left: p, right }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransversalityVerdict {
        transversal: true,
        reason: Reason::RegularAndCentralizing,
        singular_points,
        max_field_at_singular: worst,
    })
}

/// Fixed points of a transversal pair on the graph against the Betti sum `|W/W_Θ|`.
pub fn diagonal_tightness_report(
    y: &LieElement<f64>,
    z: &LieElement<f64>,
    ft: &FlagType,
    d: &ShiftedDiagonal,
) -> Result<TightnessReport> {
    let verdict = diagonal_pair_transversal(y, z, ft, d)?;
    if !verdict.transversal {
        return Err(Error::Precondition(format!(
            "(Y, Z) is not transversal ({:?})",
            verdict.reason
        )));
    }
    let betti = usize::try_from(coset_count(ft))
        .map_err(|_| Error::Domain("Weyl coset count overflows".into()))?;
    Ok(TightnessReport::new(betti, verdict))
}

fn su3() -> AlgebraDescriptor {
    AlgebraDescriptor::su(3)
}

/// `H = i·diag{2,-1,-1}` as a float element.
fn h_element() -> LieElement<f64> {
    LieElement::i_diag(su3(), &[2.0, -1.0, -1.0]).expect("trace zero")
}

/// Whether `y` lies in the centralizer of `H`.
pub fn in_u_h(y: &LieElement<f64>) -> bool {
    let h = h_element();
    y.algebra() == su3()
        && bracket_norm(y.matrix(), h.matrix()) <= bracket_tol(y.matrix(), h.matrix())
}

/// Transversality of `Z = X_β + Y` to `S³ = {X_γ : |γ| = 1}` in the maximal flag of su(3).
///
/// The normal part of the field at `X_γ` is `[X_β, X_γ]`, whose zero set in `γ` is the
/// kernel of a real-linear map `C² → su(3)`. For `β ≠ 0` it is the real line `Rβ`,
/// meeting `S³` in the two points `±X_β/|β|`.
pub fn s3_transversal(beta: [Complex64; 2], y: &LieElement<f64>) -> Result<TransversalityVerdict> {
    if !in_u_h(y) {
        return Err(Error::Domain("Y is not in the centralizer of H".into()));
    }
    let xb = crate::case_study::x_beta(beta);
    let nb = (beta[0].norm_sqr() + beta[1].norm_sqr()).sqrt();
    let not_transversal = |reason| TransversalityVerdict {
        transversal: false,
        reason,
        singular_points: Vec::new(),
        max_field_at_singular: 0.0,
    };
    if nb <= BRACKET_TOL {
        return Ok(not_transversal(if y.frob_norm() > BRACKET_TOL {
            Reason::TangentNonvanishing
        } else {
            Reason::Other
        }));
    }
    if bracket_norm(y.matrix(), xb.matrix()) > bracket_tol(y.matrix(), xb.matrix()) {
        return Ok(not_transversal(Reason::TangentNonvanishing));
    }
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let rows: Vec<Vec<f64>> = [[one, zero], [i, zero], [zero, one], [zero, i]]
        .iter()
        .map(|g| {
            xb.bracket(&crate::case_study::x_beta(*g))
                .map(|c| c.coords())
        })
        .collect::<Result<_>>()?;
    // kernel of γ ↦ [X_β, X_γ], as columns
    let cols: Vec<Vec<f64>> = (0..rows[0].len())
        .map(|k| rows.iter().map(|r| r[k]).collect())
        .collect();
    let kernel = 4 - crate::linalg::float_rank(&cols, REL_RANK_TOL);
    if kernel != 1 {
        return Ok(not_transversal(Reason::Other));
    }
    let orbit = AdjointOrbit::new(
        su3(),
        &[
            crate::scalar::qi(1),
            crate::scalar::qi(0),
            crate::scalar::qi(-1),
        ],
    )?;
    let z = xb.add(y)?;
    let mut worst: f64 = 0.0;
    let mut singular_points = Vec::new();
    for sign in [1.0, -1.0] {
        let x = xb.scale(&(sign / nb));
        worst = worst.max(bracket_norm(z.matrix(), x.matrix()));
        singular_points.push(SingularPoint::Flag(OrbitPoint::new(orbit.clone(), x)?));
    }
    if worst > BRACKET_TOL * z.frob_norm().max(1.0) {
        return Err(Error::Inconclusive(format!(
            "field at the antipodal points has norm {worst:.3e}"
        )));
    }
    Ok(TransversalityVerdict {
        transversal: true,
        reason: Reason::RegularAndCentralizing,
        singular_points,
        max_field_at_singular: worst,
    })
}

pub fn s3_tightness_report(beta: [Complex64; 2], y: &LieElement<f64>) -> Result<TightnessReport> {
    let verdict = s3_transversal(beta, y)?;
    if !verdict.transversal {
        return Err(Error::Precondition(format!(
            "X_β + Y is not transversal ({:?})",
            verdict.reason
        )));
    }
    Ok(TightnessReport::new(S3_BETTI_SUM, verdict))
}

/// The element `s·diag(i, iP - 2i(I - P))` of `u_H`, `P` the projection onto `β̄`;
/// it commutes with `X_β`.
pub fn s3_commuting_y(beta: [Complex64; 2], s: f64) -> LieElement<f64> {
    let nb2 = beta[0].norm_sqr() + beta[1].norm_sqr();
    let i = Complex64::new(0.0, 1.0);
    let m = CMat::from_fn(3, |r, c| match (r, c) {
        (0, 0) => i * s,
        (0, _) | (_, 0) => Complex64::new(0.0, 0.0),
        _ => {
            let p = beta[r - 1].conj() * beta[c - 1] / nb2;
            let id = if r == c { 1.0 } else { 0.0 };
            i * s * (p - (Complex64::new(id, 0.0) - p) * 2.0)
        }
    });
    LieElement::project(su3(), &m)
}

/// Random admissible `(β, Y)` for the S³ example.
pub fn s3_admissible<R: Rng + ?Sized>(rng: &mut R) -> ([Complex64; 2], LieElement<f64>) {
    let mut c = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let beta = [c(), c()];
    let s: f64 = rng.random_range(-2.0..2.0);
    (beta, s3_commuting_y(beta, s))
}

/// Counts `L ∩ g(L)` for `g = (e^{tY}, e^{tZ})` and matches each intersection point
/// with a predicted singular pair within `10t²`.
///
/// `g(x, -Ad(m)x)` is on the graph iff `x` commutes with
/// `k_t = e^{-tY} m⁻¹ e^{tZ} m`, so for `k_t` with distinct eigenvalues the
/// intersection is `{g·(V w(iH) V†, ...)}` over an eigenbasis `V` of `k_t`.
pub fn local_tightness_probe(
    d: &ShiftedDiagonal,
    y: &LieElement<f64>,
    z: &LieElement<f64>,
    ft: &FlagType,
    t: f64,
) -> Result<usize> {
    if !(t > 0.0 && t <= MAX_PROBE_T) {
        return Err(Error::Domain(format!(
            "probe time {t} outside (0, {MAX_PROBE_T}]"
        )));
    }
    let verdict = diagonal_pair_transversal(y, z, ft, d)?;
    if !verdict.transversal {
        return Err(Error::Precondition(format!(
            "(Y, Z) is not transversal ({:?})",
            verdict.reason
        )));
    }
    let a = d.algebra();
    let orbit = orbit_for(a, ft)?;
    let gy = Unitary::exp(&y.matrix().scale(&t));
    let gz = Unitary::exp(&z.matrix().scale(&t));
    let m = d.m();
    let k = gy.inverse().mul(&m.inverse()).mul(&gz).mul(m);
    let (q, tri) = Schur::new(k.matrix().to_na()).unpack();
    let eig: Vec<Complex64> = (0..a.n).map(|i| tri[(i, i)]).collect();
    let gap = (0..a.n)
        .flat_map(|i| (i + 1..a.n).map(move |j| (i, j)))
        .map(|(i, j)| (eig[i] - eig[j]).norm())
        .fold(f64::INFINITY, f64::min);
    if gap <= 1e-3 * t * t {
        return Err(Error::Inconclusive(format!(
            "k_t has nearly repeated eigenvalues (gap {gap:.3e})"
        )));
    }
    let v = CMat::from_na(&q);
    let dual = orbit.dual();
    let g_right = gz.mul(m);
    let mut intersection = Vec::new();
    for w in weyl_orbit(ft) {
        let diag: Vec<f64> = w.diagonal.iter().map(|q| q.to_f64()).collect();
        let x = LieElement::project(a, &v.mul(&CMat::i_diag(&diag)).mul(&v.adjoint()));
        let left = OrbitPoint::new(orbit.clone(), gy.ad(&x))
            .map_err(|_| Error::Inconclusive("intersection point left the orbit".into()))?;
        let right = OrbitPoint::new(dual.clone(), g_right.ad(&x).neg())
            .map_err(|_| Error::Inconclusive("intersection point left the orbit".into()))?;
        let p = ProductOrbitPoint { left, right };
        if graph_residual(&p, d) > 1e-8 {
            return Err(Error::Inconclusive(
                "intersection point is off the graph".into(),
            ));
        }
        intersection.push(p);
    }
    let radius = 10.0 * t * t;
    let mut matched = vec![false; intersection.len()];
    for s in &verdict.singular_points {
        let SingularPoint::Product(s) = s else {
            unreachable!("graph singular points are pairs")
        };
        let hit = intersection.iter().enumerate().position(|(k, p)| {
            !matched[k]
                && p.left
                    .element()
                    .matrix()
                    .max_diff(s.left.element().matrix())
                    <= radius
                && p.right
                    .element()
                    .matrix()
                    .max_diff(s.right.element().matrix())
                    <= radius
        });
        match hit {
            Some(k) => matched[k] = true,
            None => {
                return Err(Error::Inconclusive(
                    "a predicted singular pair has no intersection point within 10t^2".into(),
                ))
            }
        }
    }
    Ok(matched.iter().filter(|&&b| b).count())
}

/// Regular diagonal pair `(Y, Z)` in su(n) with `Y ± Z` both regular.
pub fn random_diagonal_pair<R: Rng + ?Sized>(
    a: AlgebraDescriptor,
    rng: &mut R,
) -> (LieElement<f64>, LieElement<f64>) {
    let mut diag = || -> LieElement<f64> {
        let mut v: Vec<f64> = (0..a.n).map(|_| rng.random_range(-3.0..3.0)).collect();
        if a.family == Family::Su {
            let mean = v.iter().sum::<f64>() / a.n as f64;
            v.iter_mut().for_each(|x| *x -= mean);
        }
        LieElement::i_diag(a, &v).expect("normalized")
    };
    loop {
        let (y, z) = (diag(), diag());
        let ok = [y.sub(&z), y.add(&z)]
            .into_iter()
            .all(|w| w.and_then(|w| is_regular(&w)).unwrap_or(false));
        if ok {
            return (y, z);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_for;
    use crate::scalar::qi;

    fn ft(values: &[i64], mult: &[usize]) -> FlagType {
        FlagType::new(values.iter().map(|&v| qi(v)).collect(), mult.to_vec()).unwrap()
    }

    fn diag(v: &[f64]) -> LieElement<f64> {
        LieElement::i_diag(AlgebraDescriptor::su(v.len()), v).unwrap()
    }

    #[test]
    fn singular_points_counts() {
        let a = diag(&[1.0, 2.0, -3.0]);
        assert_eq!(
            singular_points_on_flag(&a, &ft(&[1, 0, -1], &[1, 1, 1]))
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            singular_points_on_flag(&a, &ft(&[1, -2], &[2, 1]))
                .unwrap()
                .len(),
            3
        );
        let e = singular_points_on_flag(&diag(&[2.0, -1.0, -1.0]), &ft(&[1, 0, -1], &[1, 1, 1]));
        assert!(matches!(e, Err(Error::InfiniteSingularities(_))));
    }

    #[test]
    fn diagonal_pairs() {
        let d = ShiftedDiagonal::diagonal(AlgebraDescriptor::su(3));
        let f = ft(&[1, 0, -1], &[1, 1, 1]);
        let (y, z) = (diag(&[1.0, 2.0, -3.0]), diag(&[0.5, -1.5, 1.0]));
        let r = diagonal_tightness_report(&y, &z, &f, &d).unwrap();
        assert!(r.tight && r.fixed_points == 6);
        assert_eq!(local_tightness_probe(&d, &y, &z, &f, 0.01).unwrap(), 6);
        let gr = ft(&[1, -2], &[2, 1]);
        assert_eq!(local_tightness_probe(&d, &y, &z, &gr, 0.01).unwrap(), 3);
        assert!(local_tightness_probe(&d, &y, &z, &f, 0.0).is_err());

        let zero = LieElement::zero(AlgebraDescriptor::su(3));
        let v = diagonal_pair_transversal(&zero, &zero, &f, &d).unwrap();
        assert_eq!(v.reason, Reason::NotRegular);
        let mut rng = rng_for(2, 0);
        let off = crate::sampling::random_element(AlgebraDescriptor::su(3), &mut rng);
        let v = diagonal_pair_transversal(&off, &z, &f, &d).unwrap();
        assert!(!v.transversal);
    }

    #[test]
    fn s3_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let y0 = LieElement::zero(su3());
        let r = s3_tightness_report([one, zero], &y0).unwrap();
        assert_eq!((r.fixed_points, r.betti_sum), (2, 2));
        let y = s3_commuting_y([zero, one], 0.7);
        assert!(s3_tightness_report([zero, one], &y).unwrap().tight);
        let v = s3_transversal([zero, zero], &y).unwrap();
        assert_eq!(v.reason, Reason::TangentNonvanishing);
        let y_bad = s3_commuting_y([zero, one], 1.0);
        assert!(!s3_transversal([one, zero], &y_bad).unwrap().transversal);
        let outside = crate::case_study::x_beta([one, zero]);
        assert!(s3_transversal([one, zero], &outside).is_err());
    }
}
