//! Diagonal and shifted-diagonal actions on products of flags: the duality
//! criterion, graph Lagrangians, the isotopy between them and a best-effort search
//! for isotropic orbits in products of several flags.

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Unitary;
use crate::lie::{AlgebraDescriptor, Family, LieElement};
use crate::matrix::CMat;
use crate::orbit::{kks_form, orbit_membership, AdjointOrbit, OrbitPoint, ProductOrbitPoint};
use crate::par::{map_indexed, Exec};
use crate::sampling::{random_element, rng_for};
use crate::scalar::{Scalar, Q};
use crate::spectral::eigh_skew;
use crate::weyl::{dual_involution, flag_type_of, FlagType};

/// Entrywise tolerance of the graph equation.
pub const GRAPH_TOL: f64 = 1e-9;
/// Bound on sampled product-KKS values for an isotropic orbit.
pub const PRODUCT_KKS_TOL: f64 = 1e-8;
/// Residual at which the multi-flag search accepts a witness.
pub const SEARCH_TARGET: f64 = 1e-6;
pub const MAX_BUDGET: usize = 1_000_000;

/// `Δ^m = {(u, m u m⁻¹)}` inside `U × U`.
#[derive(Clone, Debug)]
pub struct ShiftedDiagonal {
    m: Unitary,
    algebra: AlgebraDescriptor,
}

impl ShiftedDiagonal {
    pub fn new(algebra: AlgebraDescriptor, m: Unitary) -> Result<Self> {
        if m.n() != algebra.n {
            return Err(Error::Descriptor(format!(
                "{}x{} shift for {algebra}",
                m.n(),
                m.n()
            )));
        }
        if algebra.family == Family::Su {
            Unitary::new_special(m.matrix().clone())?;
        }
        Ok(ShiftedDiagonal { m, algebra })
    }

    /// The plain diagonal `m = I`.
    pub fn diagonal(algebra: AlgebraDescriptor) -> Self {
        ShiftedDiagonal {
            m: Unitary::identity(algebra.n),
            algebra,
        }
    }

    pub fn m(&self) -> &Unitary {
        &self.m
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.algebra
    }

    /// The element `(u, m u m⁻¹)`.
    pub fn lift(&self, u: &Unitary) -> (Unitary, Unitary) {
        (u.clone(), self.m.mul(u).mul(&self.m.inverse()))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KksWitness {
    /// Imaginary diagonals of the point `(iH₁, iH₂)`.
    pub point: [Vec<String>; 2],
    /// Indices into the canonical basis; the tangent pair is `(B_i, B_j)` in both slots.
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub dual: bool,
    pub spectrum_left_negated: Vec<String>,
    pub spectrum_right: Vec<String>,
    pub flag_type_left: FlagType,
    pub flag_type_right: FlagType,
    /// Whether the right flag type is the dual involution of the left one.
    pub flag_types_dual: bool,
    /// Exact minimum of `‖Ad(u₁)(iH₁) + Ad(u₂)(iH₂)‖²` over `U × U`.
    pub min_residual_squared: String,
    /// Values of `-spec(H₁)` not matched in `spec(H₂)`, and vice versa.
    pub unmatched_left: Vec<String>,
    pub unmatched_right: Vec<String>,
    pub kks_witness: Option<KksWitness>,
}

fn diagonal_of(h: &LieElement<Q>) -> Result<Vec<Q>> {
    let m = h.matrix();
    if !m.is_diagonal() {
        return Err(Error::Domain("expected a diagonal element".into()));
    }
    Ok((0..m.n()).map(|i| m.get(i, i).im.clone()).collect())
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(|q| q.to_string()).collect()
}

fn sorted_desc(mut v: Vec<Q>) -> Vec<Q> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Multiset difference `a \ b` for sorted inputs.
fn multiset_minus(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut rest = b.to_vec();
    let mut out = Vec::new();
    for x in a {
        if let Some(p) = rest.iter().position(|y| y == x) {
            rest.remove(p);
        } else {
            out.push(x.clone());
        }
    }
    out
}

/// Whether the diagonal action on the product of the orbits through `iH₁`, `iH₂`
/// has an isotropic orbit, i.e. `spec(-H₁) = spec(H₂)`.
///
/// The minimum residual uses the sorted-spectrum bound for sums of conjugates, so a
/// positive value certifies that `Ad(u₁)(iH₁) + Ad(u₂)(iH₂) = 0` has no solution.
pub fn dual_check(h1: &LieElement<Q>, h2: &LieElement<Q>) -> Result<DualityReport> {
    if h1.algebra() != h2.algebra() {
        return Err(Error::Descriptor(format!(
            "{} and {} are different algebras",
            h1.algebra(),
            h2.algebra()
        )));
    }
    let left_neg = sorted_desc(diagonal_of(h1)?.into_iter().map(|v| -v).collect());
    let right = sorted_desc(diagonal_of(h2)?);
    let ft1 = flag_type_of(h1)?;
    let ft2 = flag_type_of(h2)?;
    let dual = left_neg == right;
    let bound: Q = left_neg
        .iter()
        .zip(&right)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let kks_witness = if dual { None } else { product_witness(h1, h2)? };
    Ok(DualityReport {
        dual,
        spectrum_left_negated: strings(&left_neg),
        spectrum_right: strings(&right),
        flag_types_dual: dual_involution(&ft1) == ft2,
        flag_type_left: ft1,
        flag_type_right: ft2,
        min_residual_squared: bound.to_string(),
        unmatched_left: strings(&multiset_minus(&left_neg, &right)),
        unmatched_right: strings(&multiset_minus(&right, &left_neg)),
        kks_witness,
    })
}

/// Basis pair maximizing `|ω₁ + ω₂|` at `(iH₁, iH₂)`, which equals `|<iH₁ + iH₂, [B_i, B_j]>|`.
fn product_witness(h1: &LieElement<Q>, h2: &LieElement<Q>) -> Result<Option<KksWitness>> {
    let p1: OrbitPoint<Q> = OrbitPoint::at_diagonal(h1)?;
    let p2: OrbitPoint<Q> = OrbitPoint::at_diagonal(h2)?;
    let basis = h1.algebra().basis::<Q>();
    let mut best: Option<(Q, usize, usize)> = None;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let v = kks_form(&p1, &basis[i], &basis[j])? + kks_form(&p2, &basis[i], &basis[j])?;
            if best.as_ref().is_none_or(|(b, _, _)| v.abs() > b.abs()) {
                best = Some((v, i, j));
            }
        }
    }
    Ok(best
        .filter(|(v, _, _)| !v.is_zero())
        .map(|(v, i, j)| KksWitness {
            point: [
                strings(&diagonal_of(h1).expect("checked")),
                strings(&diagonal_of(h2).expect("checked")),
            ],
            i,
            j,
            value: v.to_string(),
        }))
}

/// `(X, -Ad(m)X)` with `X = Ad(u)h` for a diagonal `h = iH`.
pub fn shifted_lagrangian_point(
    d: &ShiftedDiagonal,
    u: &Unitary,
    h: &LieElement<Q>,
) -> Result<ProductOrbitPoint<f64>> {
    if h.algebra() != d.algebra {
        return Err(Error::Descriptor(format!(
            "element of {} for a shift in {}",
            h.algebra(),
            d.algebra
        )));
    }
    if u.n() != d.algebra.n {
        return Err(Error::Descriptor(
            "unitary size does not match the algebra".into(),
        ));
    }
    let left_orbit = AdjointOrbit::through_diagonal(h)?;
    let right_orbit = left_orbit.dual();
    let x = u.ad(&h.to_f64());
    let y = d.m.ad(&x).neg();
    if !orbit_membership(&x, &left_orbit) || !orbit_membership(&y, &right_orbit) {
        return Err(Error::Inconclusive(
            "constructed graph point failed the orbit membership check".into(),
        ));
    }
    Ok(ProductOrbitPoint {
        left: OrbitPoint::new(left_orbit, x)?,
        right: OrbitPoint::new(right_orbit, y)?,
    })
}

/// `max |y + m x m†|` over entries.
pub fn graph_residual(p: &ProductOrbitPoint<f64>, d: &ShiftedDiagonal) -> f64 {
    let image = d.m.ad_matrix(p.left.element().matrix());
    p.right.element().matrix().add(&image).max_abs()
}

pub fn is_on_shifted_lagrangian(p: &ProductOrbitPoint<f64>, d: &ShiftedDiagonal) -> bool {
    p.left.element().algebra() == d.algebra && graph_residual(p, d) <= GRAPH_TOL
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProductKksReport {
    pub samples: usize,
    pub max_residual: f64,
    pub tangent_rank: usize,
    pub flag_dim: usize,
    pub isotropic: bool,
    pub lagrangian: bool,
}

/// `ω₁(X̃, Ỹ) + ω₂(Ad(m)X̃, Ad(m)Ỹ)` at `p`.
fn product_pairing(
    p: &ProductOrbitPoint<f64>,
    m: &Unitary,
    x: &LieElement<f64>,
    y: &LieElement<f64>,
) -> Result<f64> {
    Ok(kks_form(&p.left, x, y)? + kks_form(&p.right, &m.ad(x), &m.ad(y))?)
}

/// Tangent rank of the `Δ^m`-orbit through `p` in the product.
pub fn shifted_orbit_rank(p: &ProductOrbitPoint<f64>, d: &ShiftedDiagonal) -> Result<usize> {
    let rows: Vec<Vec<f64>> = d
        .algebra
        .basis::<f64>()
        .iter()
        .map(|b| {
            let mut row = b.bracket(p.left.element())?.coords();
            row.extend(d.m.ad(b).bracket(p.right.element())?.coords());
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(f64::rank(&rows))
}

/// Sampled product-KKS values on the `Δ^m`-orbit through an on-graph point, and the
/// orbit's tangent rank against the flag dimension.
pub fn product_kks_check(
    p: &ProductOrbitPoint<f64>,
    d: &ShiftedDiagonal,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<ProductKksReport> {
    if !is_on_shifted_lagrangian(p, d) {
        return Err(Error::Domain(format!(
            "point is off the graph of -Ad(m) (residual {:.3e})",
            graph_residual(p, d)
        )));
    }
    let values = map_indexed(samples, exec, |k| {
        let mut rng = rng_for(seed, k as u64);
        let x = random_element(d.algebra, &mut rng);
        let y = random_element(d.algebra, &mut rng);
        product_pairing(p, &d.m, &x, &y).map(f64::abs)
    });
    let max_residual = values
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let tangent_rank = shifted_orbit_rank(p, d)?;
    let flag_dim = p.left.orbit().flag_dimension();
    Ok(ProductKksReport {
        samples,
        max_residual,
        tangent_rank,
        flag_dim,
        isotropic: max_residual <= PRODUCT_KKS_TOL,
        lagrangian: max_residual <= PRODUCT_KKS_TOL && tangent_rank == flag_dim,
    })
}

/// Sampled transitivity: random graph points are matched to `(u, m u m⁻¹)·p₀` with `u`
/// read off an eigenbasis. Returns the largest entrywise mismatch.
pub fn graph_transitivity(
    d: &ShiftedDiagonal,
    h: &LieElement<Q>,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64> {
    let orbit = AdjointOrbit::through_diagonal(h)?;
    let rep = orbit.representative::<Q>();
    let base = shifted_lagrangian_point(d, &Unitary::identity(d.algebra.n), &rep)?;
    let residuals = map_indexed(samples, exec, |k| -> Result<f64> {
        let mut rng = rng_for(seed, k as u64);
        let g = Unitary::haar(d.algebra.n, d.algebra.family == Family::Su, &mut rng);
        let p = shifted_lagrangian_point(d, &g, &rep)?;
        // eigenvalues come out descending, matching the representative's diagonal
        let e = eigh_skew(p.left.element().matrix());
        let u = Unitary::new(CMat::from_na(&e.vectors))?;
        let (a, b) = d.lift(&u);
        let left = a.ad_matrix(base.left.element().matrix());
        let right = b.ad_matrix(base.right.element().matrix());
        Ok(left
            .max_diff(p.left.element().matrix())
            .max(right.max_diff(p.right.element().matrix())))
    });
    Ok(residuals
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max))
}

#[derive(Clone, Debug)]
pub struct IsotopyStep {
    pub point: ProductOrbitPoint<f64>,
    pub generator: LieElement<f64>,
    pub branch_warning: Option<String>,
}

/// `φ_t(x, y) = (x, e^{tX} y e^{-tX})` with `X = log(m₂ m₁⁻¹)` on the principal branch.
pub fn isotopy_path(
    m1: &Unitary,
    m2: &Unitary,
    t: f64,
    p: &ProductOrbitPoint<f64>,
) -> Result<IsotopyStep> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("isotopy time {t} outside [0, 1]")));
    }
    let a = p.right.element().algebra();
    if m1.n() != a.n || m2.n() != a.n {
        return Err(Error::Descriptor(
            "shift size does not match the point".into(),
        ));
    }
    let log = m2.mul(&m1.inverse()).log();
    let g = Unitary::exp(&log.generator.scale(&t));
    let right = OrbitPoint::new(p.right.orbit().clone(), g.ad(p.right.element()))
        .map_err(|_| Error::Inconclusive("isotopy left the orbit numerically".into()))?;
    Ok(IsotopyStep {
        point: ProductOrbitPoint {
            left: p.left.clone(),
            right,
        },
        generator: LieElement::project(AlgebraDescriptor::u(a.n), &log.generator),
        branch_warning: log.branch_warning,
    })
}

/// Largest change of the product-KKS value of sampled tangent pairs pushed forward
/// by `φ_t`.
pub fn isotopy_kks_invariance(
    m1: &Unitary,
    m2: &Unitary,
    t: f64,
    p: &ProductOrbitPoint<f64>,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let step = isotopy_path(m1, m2, t, p)?;
    let g = Unitary::exp(&step.generator.matrix().scale(&t));
    let a = p.left.element().algebra();
    let mut rng = rng_for(seed, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let v: Vec<LieElement<f64>> = (0..4).map(|_| random_element(a, &mut rng)).collect();
        let before = kks_form(&p.left, &v[0], &v[2])? + kks_form(&p.right, &v[1], &v[3])?;
        let after = kks_form(&step.point.left, &v[0], &v[2])?
            + kks_form(&step.point.right, &g.ad(&v[1]), &g.ad(&v[3]))?;
        worst = worst.max((after - before).abs());
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SearchStage {
    Weyl,
    Refinement,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub found: bool,
    pub stage: Option<SearchStage>,
    /// Frobenius norm of the sum at the returned (or best) tuple.
    pub residual: f64,
    /// `u₁, ..., u_p`; present only when found.
    pub witness: Option<Vec<Unitary>>,
    pub evaluations: usize,
    pub restarts: usize,
    pub note: String,
    /// Nonexistence certificate for two flags; `None` for p > 2 or when dual.
    pub duality: Option<DualityReport>,
}

fn sum_residual(terms: &[(Unitary, CMat<f64>)]) -> f64 {
    let n = terms[0].1.n();
    terms
        .iter()
        .fold(CMat::zeros(n), |acc, (u, h)| acc.add(&u.ad_matrix(h)))
        .frob_norm()
}

/// Residual of `Ad(u₁)(iH₁) + Σ_j Ad(m_j⁻¹ u_{j+1})(iH_{j+1})`.
pub fn multi_flag_residual(hs: &[LieElement<Q>], shifts: &[Unitary], us: &[Unitary]) -> f64 {
    let terms: Vec<(Unitary, CMat<f64>)> = hs
        .iter()
        .enumerate()
        .map(|(j, h)| {
            let g = if j == 0 {
                us[0].clone()
            } else {
                shifts[j - 1].inverse().mul(&us[j])
            };
            (g, h.to_f64().matrix().clone())
        })
        .collect();
    sum_residual(&terms)
}

/// Permutation unitary `P` with `P diag(d) P† = diag(target)`.
fn permutation_to(d: &[Q], target: &[Q]) -> Unitary {
    let mut used = vec![false; d.len()];
    let mut sigma = vec![0; d.len()];
    for (k, t) in target.iter().enumerate() {
        let src = (0..d.len())
            .find(|&i| !used[i] && d[i] == *t)
            .expect("target is a rearrangement");
        used[src] = true;
        sigma[src] = k;
    }
    Unitary::permutation(&sigma)
}

/// Best-effort search for `u₁..u_p` with `Ad(u₁)(iH₁) + Σ Ad(m_j⁻¹ u_{j+1})(iH_{j+1}) = 0`.
///
/// The overall conjugation is fixed by `u₁ = I`, so the unknowns are `v_j = m_{j-1}⁻¹ u_j`.
/// Stage 1 tries every tuple of Weyl rearrangements exactly; stage 2 runs seeded
/// (1+1) random searches with 1/5-rule step control on `‖Σ‖²`. Absence of a
/// witness is not a proof; for two flags the duality certificate is attached.
pub fn multi_flag_search(
    hs: &[LieElement<Q>],
    shifts: &[Unitary],
    budget: usize,
    seed: u64,
    exec: Exec,
) -> Result<SearchReport> {
    let p = hs.len();
    if p < 2 {
        return Err(Error::Domain(
            "multi-flag search needs at least two flags".into(),
        ));
    }
    if budget > MAX_BUDGET {
        return Err(Error::Domain(format!(
            "budget {budget} exceeds {MAX_BUDGET}"
        )));
    }
    let a = hs[0].algebra();
    if hs.iter().any(|h| h.algebra() != a) {
        return Err(Error::Descriptor(
            "all flags must live in one algebra".into(),
        ));
    }
    let shifts: Vec<Unitary> = match shifts.len() {
        0 => vec![Unitary::identity(a.n); p - 1],
        k if k == p - 1 => shifts.to_vec(),
        k => {
            return Err(Error::Domain(format!(
                "{k} shifts given for {p} flags, expected {}",
                p - 1
            )))
        }
    };
    if shifts.iter().any(|m| m.n() != a.n) {
        return Err(Error::Descriptor(
            "shift size does not match the algebra".into(),
        ));
    }
    let diagonals: Vec<Vec<Q>> = hs.iter().map(diagonal_of).collect::<Result<_>>()?;
    let duality = if p == 2 {
        Some(dual_check(&hs[0], &hs[1])?)
    } else {
        None
    };
    let to_witness = |vs: &[Unitary]| -> Vec<Unitary> {
        let mut us = vec![Unitary::identity(a.n)];
        us.extend(vs.iter().zip(&shifts).map(|(v, m)| m.mul(v)));
        us
    };

    // Stage 1: exact Weyl tuples.
    let orbits: Vec<Vec<Vec<Q>>> = hs[1..]
        .iter()
        .map(|h| {
            let ft = flag_type_of(h)?;
            Ok(crate::weyl::weyl_orbit(&ft)
                .into_iter()
                .map(|w| w.diagonal)
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut evaluations = 0;
    let mut index = vec![0usize; p - 1];
    'weyl: loop {
        if evaluations >= budget {
            break;
        }
        evaluations += 1;
        let zero = (0..a.n).all(|k| {
            let s: Q = diagonals[0][k].clone()
                + index
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| orbits[j][i][k].clone())
                    .sum::<Q>();
            s.is_zero()
        });
        if zero {
            let vs: Vec<Unitary> = index
                .iter()
                .enumerate()
                .map(|(j, &i)| permutation_to(&diagonals[j + 1], &orbits[j][i]))
                .collect();
            let us = to_witness(&vs);
            let residual = multi_flag_residual(hs, &shifts, &us);
            return Ok(SearchReport {
                found: true,
                stage: Some(SearchStage::Weyl),
                residual,
                witness: Some(us),
                evaluations,
                restarts: 0,
                note: "exact solution among Weyl rearrangements".into(),
                duality,
            });
        }
        for j in 0..p - 1 {
            index[j] += 1;
            if index[j] < orbits[j].len() {
                continue 'weyl;
            }
            index[j] = 0;
        }
        break;
    }

    // Stage 2: seeded restarts, merged by best residual then lowest index.
    let remaining = budget.saturating_sub(evaluations);
    let restarts = 8.min(remaining);
    let per = remaining.checked_div(restarts).unwrap_or(0);
    let hf: Vec<CMat<f64>> = hs.iter().map(|h| h.to_f64().matrix().clone()).collect();
    let runs = map_indexed(restarts, exec, |r| {
        refine(a, &hf, per, rng_for(seed, r as u64))
    });
    let used: usize = runs.iter().map(|r| r.2).sum();
    let best = runs
        .into_iter()
        .enumerate()
        .min_by(|(i, x), (j, y)| x.1.total_cmp(&y.1).then(i.cmp(j)));
    let (vs, residual) = match best {
        Some((_, (vs, res, _))) => (Some(vs), res),
        None => (None, f64::INFINITY),
    };
    let found = residual <= SEARCH_TARGET;
    let us = vs.map(|vs| to_witness(&vs));
    let residual = us
        .as_ref()
        .map(|u| multi_flag_residual(hs, &shifts, u))
        .unwrap_or(residual);
    Ok(SearchReport {
        found,
        stage: found.then_some(SearchStage::Refinement),
        residual,
        witness: if found { us } else { None },
        evaluations: evaluations + used,
        restarts,
        note: if found {
            "continuous refinement reached the target residual".into()
        } else {
            "not found within budget".into()
        },
        duality,
    })
}

/// One (1+1) run over `v_2..v_p`; returns the best tuple, its residual and the
/// number of evaluations spent.
fn refine(
    a: AlgebraDescriptor,
    hf: &[CMat<f64>],
    budget: usize,
    mut rng: rand_chacha::ChaCha8Rng,
) -> (Vec<Unitary>, f64, usize) {
    let special = a.family == Family::Su;
    let objective = |vs: &[Unitary]| -> f64 {
        let mut terms = vec![(Unitary::identity(a.n), hf[0].clone())];
        terms.extend(vs.iter().cloned().zip(hf[1..].iter().cloned()));
        sum_residual(&terms)
    };
    let mut vs: Vec<Unitary> = (1..hf.len())
        .map(|_| Unitary::haar(a.n, special, &mut rng))
        .collect();
    let mut f = objective(&vs);
    let mut step = 0.5;
    let mut spent = 1;
    while spent < budget && f > SEARCH_TARGET * 0.5 && step > 1e-14 {
        let cand: Vec<Unitary> = vs
            .iter()
            .map(|v| {
                let d = random_element(a, &mut rng).scale(&(step * rng.random_range(0.5..1.5)));
                Unitary::exp_element(&d).mul(v)
            })
            .collect();
        let fc = objective(&cand);
        spent += 1;
        if fc < f {
            vs = cand;
            f = fc;
            step *= 1.5;
        } else {
            step *= 1.5f64.powf(-0.25);
        }
    }
    (vs, f, spent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case_study::k_matrix;
    use crate::scalar::qi;

    fn h(v: &[i64]) -> LieElement<Q> {
        let a = AlgebraDescriptor::su(v.len());
        LieElement::i_diag(a, &v.iter().map(|&x| qi(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn duality_examples() {
        let r = dual_check(&h(&[2, -1, -1]), &h(&[1, 1, -2])).unwrap();
        assert!(r.dual && r.flag_types_dual && r.kks_witness.is_none());
        assert_eq!(r.min_residual_squared, "0");
        let r = dual_check(&h(&[2, -1, -1]), &h(&[2, -1, -1])).unwrap();
        assert!(!r.dual);
        assert_eq!(r.min_residual_squared, "6");
        assert!(r.kks_witness.is_some());
        assert!(dual_check(&h(&[1, 0, -1]), &h(&[1, 0, -1])).unwrap().dual);
    }

    #[test]
    fn graph_points_and_sign() {
        let a = AlgebraDescriptor::su(3);
        let d = ShiftedDiagonal::diagonal(a);
        let p = shifted_lagrangian_point(&d, &Unitary::identity(3), &h(&[1, 0, -1])).unwrap();
        assert!(is_on_shifted_lagrangian(&p, &d));
        assert_eq!(p.right.element().matrix(), &CMat::i_diag(&[-1.0, 0.0, 1.0]));
        let flipped = ProductOrbitPoint {
            left: p.left.clone(),
            right: OrbitPoint::new(p.right.orbit().clone(), p.left.element().clone()).unwrap(),
        };
        assert!(!is_on_shifted_lagrangian(&flipped, &d));
    }

    #[test]
    fn shifted_graph_is_lagrangian() {
        let a = AlgebraDescriptor::su(3);
        let d = ShiftedDiagonal::new(a, k_matrix()).unwrap();
        let mut rng = rng_for(4, 0);
        let u = Unitary::haar(3, true, &mut rng);
        let p = shifted_lagrangian_point(&d, &u, &h(&[1, 0, -1])).unwrap();
        let r = product_kks_check(&p, &d, 100, 1, Exec::Sequential).unwrap();
        assert!(r.lagrangian, "{r:?}");
        assert_eq!(r.tangent_rank, 6);
        assert!(graph_transitivity(&d, &h(&[1, 0, -1]), 20, 3, Exec::Sequential).unwrap() < 1e-8);
    }

    #[test]
    fn isotopy_endpoints() {
        let a = AlgebraDescriptor::su(3);
        let mut rng = rng_for(9, 0);
        let m1 = Unitary::haar(3, true, &mut rng);
        let m2 = Unitary::haar(3, true, &mut rng);
        let d1 = ShiftedDiagonal::new(a, m1.clone()).unwrap();
        let d2 = ShiftedDiagonal::new(a, m2.clone()).unwrap();
        let u = Unitary::haar(3, true, &mut rng);
        let p = shifted_lagrangian_point(&d1, &u, &h(&[2, -1, -1])).unwrap();
        let s0 = isotopy_path(&m1, &m2, 0.0, &p).unwrap();
        assert!(
            s0.point
                .right
                .element()
                .matrix()
                .max_diff(p.right.element().matrix())
                < 1e-12
        );
        let s1 = isotopy_path(&m1, &m2, 1.0, &p).unwrap();
        assert!(is_on_shifted_lagrangian(&s1.point, &d2));
        assert!(isotopy_kks_invariance(&m1, &m2, 0.5, &p, 10, 2).unwrap() < 1e-8);
        assert!(isotopy_path(&m1, &m2, 1.5, &p).is_err());
    }

    #[test]
    fn search_finds_weyl_witnesses() {
        let r = multi_flag_search(
            &[h(&[1, 0, -1]), h(&[1, 0, -1])],
            &[],
            1000,
            1,
            Exec::Sequential,
        )
        .unwrap();
        assert!(r.found && r.residual < 1e-12);
        let three = [h(&[1, 0, -1]), h(&[1, 0, -1]), h(&[1, 0, -1])];
        let r = multi_flag_search(&three, &[], 1000, 1, Exec::Sequential).unwrap();
        assert_eq!(r.stage, Some(SearchStage::Weyl));
        let r = multi_flag_search(
            &[h(&[2, -1, -1]), h(&[2, -1, -1])],
            &[],
            2000,
            1,
            Exec::Sequential,
        )
        .unwrap();
        assert!(!r.found);
        assert!(!r.duality.unwrap().dual);
    }

    #[test]
    fn search_refines_non_weyl_solutions() {
        // three points of the su(2) sphere summing to zero must sit at 120 degrees,
        // which no Weyl rearrangement reaches
        let three = [h(&[1, -1]), h(&[1, -1]), h(&[1, -1])];
        let r = multi_flag_search(&three, &[], 40_000, 5, Exec::Sequential).unwrap();
        assert!(r.found, "{} {}", r.residual, r.evaluations);
        assert_eq!(r.stage, Some(SearchStage::Refinement));
    }
}
