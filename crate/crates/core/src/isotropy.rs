//! Isotropy and Lagrangian tests for subgroup orbits on flags and on cotangent bundles.
//!
//! An `L`-orbit through `x` is isotropic exactly when `x` pairs to zero with the derived
//! algebra `l'`. Every verdict is cross-validated against sampled KKS values on `l`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Unitary;
use crate::lie::{
    center, scalar_product, AlgebraDescriptor, Family, LieElement, Subalgebra, SPAN_TOL,
};
use crate::orbit::{kks_form, orbit_tangent_rank, OrbitPoint};
use crate::sampling;
use crate::scalar::{Mode, Scalar, Q};

/// Number of random KKS pairs drawn for the cross-validation.
pub const KKS_SAMPLES: usize = 50;
/// Relative tolerance for annihilator pairings on the float track.
pub const PAIRING_TOL: f64 = 1e-9;
/// Tolerance for sampled KKS values (unit-norm samples) on the float track.
pub const KKS_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Isotropic,
    NotIsotropic,
}

/// Basis pair of `l` with `<x, [B_i, B_j]> != 0` (indices are 0-based).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IsotropyReport {
    pub verdict: Verdict,
    pub lagrangian: bool,
    pub orbit_dim: usize,
    pub flag_dim: usize,
    pub witness: Option<Witness>,
    pub mode: Mode,
    pub derived_rank: usize,
    pub sampled_pairs: usize,
    pub max_sampled_kks: f64,
    /// Whether `l' ⊂ t^⊥` (a sufficient condition at diagonal points).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus_sufficient: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<Action>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_residual: Option<f64>,
}

impl IsotropyReport {
    pub fn is_isotropic(&self) -> bool {
        self.verdict == Verdict::Isotropic
    }

    /// Internal consistency of the report fields.
    pub fn consistent(&self) -> bool {
        (self.verdict == Verdict::Isotropic) == self.witness.is_none()
            && (!self.lagrangian
                || (self.verdict == Verdict::Isotropic && 2 * self.orbit_dim == self.flag_dim))
    }
}

fn inner_norm<S: Scalar>(x: &LieElement<S>) -> f64 {
    scalar_product(x, x)
        .map(|v| v.to_f64().abs().sqrt())
        .unwrap_or(0.0)
}

fn pairing_vanishes<S: Scalar>(x: &LieElement<S>, d: &LieElement<S>) -> Result<bool> {
    let v = scalar_product(x, d)?;
    Ok(match S::MODE {
        Mode::Exact => v.is_zero(),
        Mode::Float => {
            v.to_f64().abs() <= PAIRING_TOL * (inner_norm(x) * inner_norm(d)).max(1e-300)
        }
    })
}

/// Basis pair of `l` maximizing `|<x, [B_i, B_j]>|`.
fn best_pair<S: Scalar>(x: &LieElement<S>, basis: &[LieElement<S>]) -> Result<Option<Witness>> {
    let mut best: Option<(usize, usize, S)> = None;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let v = scalar_product(x, &basis[i].bracket(&basis[j])?)?;
            let better = match &best {
                None => true,
                Some((_, _, b)) => v.abs_val() > b.abs_val(),
            };
            if better {
                best = Some((i, j, v));
            }
        }
    }
    Ok(best
        .filter(|(_, _, v)| !v.is_zero())
        .map(|(i, j, v)| Witness {
            i,
            j,
            value: v.to_f64(),
            exact_value: (S::MODE == Mode::Exact).then(|| exact_string(&v)),
        }))
}

fn exact_string<S: Scalar>(v: &S) -> String {
    match v.to_json() {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

/// Samples `KKS_SAMPLES` pairs from `l`; returns the largest value and whether all vanish.
fn sampled_kks<S: Scalar>(l: &Subalgebra<S>, x: &OrbitPoint<S>, seed: u64) -> Result<(f64, bool)> {
    let mut rng = sampling::rng_for(seed, 0x6b6b73);
    let scale = 2.0 * x.element().algebra().n as f64 * x.element().frob_norm().max(1.0);
    let mut max = 0.0f64;
    let mut all_zero = true;
    for _ in 0..KKS_SAMPLES {
        let (a, b) = match S::MODE {
            Mode::Exact => (
                sampling::random_integer_combination(l, &mut rng),
                sampling::random_integer_combination(l, &mut rng),
            ),
            Mode::Float => {
                let fl = float_space(l);
                let a = sampling::random_in(&fl, &mut rng);
                let b = sampling::random_in(&fl, &mut rng);
                (from_float::<S>(&a), from_float::<S>(&b))
            }
        };
        let v = kks_form(x, &a, &b)?;
        let small = match S::MODE {
            Mode::Exact => v.is_zero(),
            Mode::Float => v.to_f64().abs() <= KKS_TOL * scale,
        };
        all_zero &= small;
        max = max.max(v.to_f64().abs());
    }
    Ok((max, all_zero))
}

fn float_space<S: Scalar>(l: &Subalgebra<S>) -> crate::lie::Subspace<f64> {
    let b: Vec<LieElement<f64>> = l.basis().iter().map(|e| e.to_f64()).collect();
    crate::lie::Subspace::span(l.algebra(), &b).expect("same algebra")
}

fn from_float<S: Scalar>(x: &LieElement<f64>) -> LieElement<S> {
    let a = x.algebra();
    let m = crate::matrix::CMat::from_fn(a.n, |i, j| {
        let z = x.matrix().get(i, j);
        num_complex::Complex::new(S::from_f64(z.re), S::from_f64(z.im))
    });
    LieElement::new(a, m).unwrap_or_else(|_| LieElement::zero(a))
}

/// Annihilator criterion at `x`, cross-validated by sampled KKS values.
pub fn check_isotropic<S: Scalar>(
    l: &Subalgebra<S>,
    x: &OrbitPoint<S>,
    seed: u64,
) -> Result<IsotropyReport> {
    if l.algebra() != x.element().algebra() {
        return Err(Error::Descriptor(format!(
            "subalgebra of {} and point of {}",
            l.algebra(),
            x.element().algebra()
        )));
    }
    let derived = l.derived();
    let mut isotropic = true;
    for d in derived.basis() {
        if !pairing_vanishes(x.element(), d)? {
            isotropic = false;
            break;
        }
    }
    let (max_sampled_kks, sampled_zero) = sampled_kks(l, x, seed)?;
    if sampled_zero != isotropic {
        return Err(Error::Inconsistency(format!(
            "annihilator test says isotropic={isotropic}, sampled KKS values say {sampled_zero} \
             (max |ω| = {max_sampled_kks:.3e})"
        )));
    }
    let witness = if isotropic {
        None
    } else {
        best_pair(x.element(), l.basis())?
    };
    if !isotropic && witness.is_none() {
        return Err(Error::Inconsistency(
            "not isotropic but every basis pairing vanishes".into(),
        ));
    }
    let orbit_dim = orbit_tangent_rank(x, l)?;
    let flag_dim = x.orbit().flag_dimension();
    let report = IsotropyReport {
        verdict: if isotropic {
            Verdict::Isotropic
        } else {
            Verdict::NotIsotropic
        },
        lagrangian: isotropic && 2 * orbit_dim == flag_dim,
        orbit_dim,
        flag_dim,
        witness,
        mode: S::MODE,
        derived_rank: derived.rank(),
        sampled_pairs: KKS_SAMPLES,
        max_sampled_kks,
        torus_sufficient: None,
        action: None,
        center_residual: None,
    };
    debug_assert!(report.consistent());
    Ok(report)
}

/// [`check_isotropic`] at the diagonal point `iH`, also reporting whether `l' ⊂ t^⊥`.
pub fn check_lagrangian_through_origin<S: Scalar>(
    l: &Subalgebra<S>,
    h: &LieElement<Q>,
    seed: u64,
) -> Result<IsotropyReport> {
    let x = OrbitPoint::<S>::at_diagonal(h)?;
    let mut report = check_isotropic(l, &x, seed)?;
    let torus = Subalgebra::<S>::torus(l.algebra());
    let derived = l.derived();
    let mut sufficient = true;
    for d in derived.basis() {
        for t in torus.basis() {
            sufficient &= pairing_vanishes(t, d)?;
        }
    }
    report.torus_sufficient = Some(sufficient);
    Ok(report)
}

/// Span of `E_jk - E_kj`, the compact real form of the root vectors (so(n) inside su(n)).
pub fn weyl_basis_subalgebra<S: Scalar>(a: AlgebraDescriptor) -> Result<Subalgebra<S>> {
    if a.family != Family::Su {
        return Err(Error::Domain(format!("expected su(n), got {a}")));
    }
    let elems: Vec<LieElement<S>> = a
        .basis::<S>()
        .into_iter()
        .filter(|b| b.matrix().entries().iter().all(|z| z.im.is_zero()))
        .collect();
    Subalgebra::generated_by(a, &elems)
}

/// Point `(g, α)` of `T*G ≅ G × g`, with `α = <X_α, ·>`.
#[derive(Clone, Debug)]
pub struct CotangentPoint {
    pub g: Unitary,
    pub alpha: LieElement<f64>,
}

impl CotangentPoint {
    pub fn new(g: Unitary, alpha: LieElement<f64>) -> Result<Self> {
        if g.n() != alpha.algebra().n {
            return Err(Error::Descriptor(
                "group element and covector sizes differ".into(),
            ));
        }
        if alpha.algebra().family == Family::Su {
            Unitary::new_special(g.matrix().clone())?;
        }
        Ok(CotangentPoint { g, alpha })
    }
}

/// Isotropy of the `G`-orbit through `p` for the left or right lifted action:
/// isotropic iff `Ad(g)X_α` (left) or `X_α` (right) is central.
pub fn cotangent_isotropy(p: &CotangentPoint, action: Action) -> Result<IsotropyReport> {
    let a = p.alpha.algebra();
    let w = match action {
        Action::Left => p.g.ad(&p.alpha),
        Action::Right => p.alpha.clone(),
    };
    let scale = w.frob_norm().max(1.0);
    let z = center::<f64>(a);
    let basis: Vec<Vec<f64>> = z.coord_rows();
    let residual = crate::linalg::projection_residual(&basis, &w.coords());
    let in_center = residual <= SPAN_TOL * scale;
    // Oracle: brackets with the whole basis vanish.
    let bracket_max = a
        .basis::<f64>()
        .iter()
        .map(|b| w.bracket(b).map(|c| c.matrix().max_abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let commutes = bracket_max <= SPAN_TOL * scale;
    if commutes != in_center {
        return Err(Error::Inconsistency(format!(
            "center projection residual {residual:.3e} and bracket test {bracket_max:.3e} disagree"
        )));
    }
    let d = a.real_dimension();
    let witness = if in_center {
        None
    } else {
        best_pair(&w, &a.basis::<f64>())?
    };
    Ok(IsotropyReport {
        verdict: if in_center {
            Verdict::Isotropic
        } else {
            Verdict::NotIsotropic
        },
        lagrangian: in_center,
        orbit_dim: d,
        flag_dim: 2 * d,
        witness,
        mode: Mode::Float,
        derived_rank: d - z.rank(),
        sampled_pairs: 0,
        max_sampled_kks: 0.0,
        torus_sufficient: None,
        action: Some(action),
        center_residual: Some(residual),
    })
}
