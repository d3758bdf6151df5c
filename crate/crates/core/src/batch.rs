//! Seeded batch sweeps: oracle cross-checks over many random instances, run through
//! [`map_indexed`] so the parallel and sequential executors give identical results.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::group::Unitary;
use crate::isotropy::{check_isotropic, cotangent_isotropy, Action, CotangentPoint};
use crate::lie::{
    centralizer, killing_form, AlgebraDescriptor, Family, LieElement, Subalgebra, Subspace,
};
use crate::orbit::{
    kks_form, moment_map_check, nondegeneracy_check, phi_equivariance_check, AdjointOrbit,
    OrbitPoint,
};
use crate::par::{map_indexed, Exec};
use crate::sampling::{random_element, random_in, rng_for};
use crate::scalar::{qi, Q};
use crate::weyl::flag_dimension;

/// Random integer spectrum in `[-3, 3]` summing to zero (for su), not all equal.
fn random_spectrum(a: AlgebraDescriptor, rng: &mut ChaCha8Rng) -> Vec<Q> {
    loop {
        let mut v: Vec<i64> = (0..a.n).map(|_| rng.random_range(-3..=3)).collect();
        if a.family == Family::Su {
            let s: i64 = v[..a.n - 1].iter().sum();
            v[a.n - 1] = -s;
            if v[a.n - 1].abs() > 3 {
                continue;
            }
        }
        if v.iter().any(|&x| x != v[0]) {
            return v.into_iter().map(qi).collect();
        }
    }
}

fn random_orbit_point(a: AlgebraDescriptor, rng: &mut ChaCha8Rng) -> Result<OrbitPoint<f64>> {
    let orbit = AdjointOrbit::new(a, &random_spectrum(a, rng))?;
    let g = Unitary::haar(a.n, a.family == Family::Su, rng);
    Ok(OrbitPoint::<f64>::base(orbit).moved(&g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SubalgebraKind {
    Torus,
    So,
    Centralizer,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleSweep {
    pub instances: usize,
    pub agreements: usize,
    pub isotropic: usize,
    pub disagreements: Vec<String>,
}

/// Independent oracle: `|ω_x(A, B)|` small for sampled `A, B ∈ l`.
fn sampled_kks_vanishes(
    l: &Subspace<f64>,
    x: &OrbitPoint<f64>,
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    let scale = x.element().frob_norm().max(1.0);
    for _ in 0..20 {
        let a = random_in(l, rng);
        let b = random_in(l, rng);
        if kks_form(x, &a, &b)?.abs() > 1e-8 * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

fn oracle_instance(k: usize, seed: u64) -> Result<(bool, bool)> {
    let mut rng = rng_for(seed, k as u64);
    let n = 2 + k % 3;
    let a = AlgebraDescriptor::su(n);
    let kind = [
        SubalgebraKind::Torus,
        SubalgebraKind::So,
        SubalgebraKind::Centralizer,
    ][(k / 3) % 3];
    // half the instances use a point that is isotropic by construction
    let special = (k / 9).is_multiple_of(2);
    let (l, x): (Subalgebra<f64>, OrbitPoint<f64>) = match kind {
        SubalgebraKind::Torus => (Subalgebra::torus(a), random_orbit_point(a, &mut rng)?),
        SubalgebraKind::So => {
            let l = crate::isotropy::weyl_basis_subalgebra::<f64>(a)?;
            let orbit = AdjointOrbit::new(a, &random_spectrum(a, &mut rng))?;
            let g = if special {
                Unitary::exp_element(&random_in(l.space(), &mut rng).scale(&3.0))
            } else {
                Unitary::haar(n, true, &mut rng)
            };
            (l, OrbitPoint::base(orbit).moved(&g))
        }
        SubalgebraKind::Centralizer => {
            // H with a repeated eigenvalue so that u_H is non-abelian
            let mut hv: Vec<i64> = vec![1; n];
            hv[0] = 1 - n as i64;
            let h = LieElement::i_diag(a, &hv.iter().map(|&v| v as f64).collect::<Vec<_>>())?;
            let l = centralizer(&h);
            let x = if special {
                let c: i64 = rng.random_range(1..=3);
                let xv: Vec<Q> = hv.iter().map(|&v| qi(c * v)).collect();
                let orbit = AdjointOrbit::new(a, &xv)?;
                let u = Unitary::exp_element(&random_in(l.space(), &mut rng).scale(&3.0));
                OrbitPoint::<f64>::new(orbit.clone(), orbit.representative::<f64>())?.moved(&u)
            } else {
                random_orbit_point(a, &mut rng)?
            };
            (l, x)
        }
    };
    let report = check_isotropic(&l, &x, seed ^ k as u64)?;
    let direct = sampled_kks_vanishes(l.space(), &x, &mut rng)?;
    Ok((report.is_isotropic() == direct, report.is_isotropic()))
}

/// Annihilator verdict against direct sampled KKS vanishing over random `(l, x)`
/// with `l` a torus, `so(n)` or a centralizer `u_H`, in su(2..4).
pub fn isotropy_oracle_sweep(count: usize, seed: u64, exec: Exec) -> OracleSweep {
    let results = map_indexed(count, exec, |k| oracle_instance(k, seed));
    let mut s = OracleSweep {
        instances: count,
        agreements: 0,
        isotropic: 0,
        disagreements: Vec::new(),
    };
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok((agree, iso)) => {
                s.agreements += usize::from(agree);
                s.isotropic += usize::from(iso);
                if !agree {
                    s.disagreements
                        .push(format!("instance {k}: verdicts differ"));
                }
            }
            Err(e) => s.disagreements.push(format!("instance {k}: {e}")),
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditSummary {
    pub instances: usize,
    pub step: f64,
    pub max_moment_residual: f64,
    pub max_equivariance_residual: f64,
    pub orbits_checked: usize,
    pub rank_mismatches: Vec<String>,
    pub errors: Vec<String>,
}

/// Finite-difference step used by the audit.
pub const AUDIT_STEP: f64 = 1e-4;

fn audit_instance(k: usize, seed: u64) -> Result<(f64, f64, Option<String>)> {
    let algebras = [
        AlgebraDescriptor::su(2),
        AlgebraDescriptor::su(3),
        AlgebraDescriptor::u(2),
    ];
    let a = algebras[k % 3];
    let mut rng = rng_for(seed, k as u64);
    let x = random_orbit_point(a, &mut rng)?;
    let y = random_element(a, &mut rng);
    let z = random_element(a, &mut rng);
    let moment = moment_map_check(&x, &y, &z, AUDIT_STEP)?;
    let g = Unitary::random_for(a, &mut rng);
    let phi = phi_equivariance_check(g.matrix(), &y, &z)?;
    let rank = nondegeneracy_check(&x)?;
    let mismatch = (rank != x.orbit().flag_dimension()).then(|| {
        format!(
            "instance {k}: rank {rank}, flag dimension {}",
            x.orbit().flag_dimension()
        )
    });
    Ok((moment, phi, mismatch))
}

/// Moment-map, equivariance and nondegeneracy identities over random instances in
/// su(2), su(3), u(2), plus nondegeneracy on one orbit of every flag type of su(4).
pub fn kks_audit(count: usize, seed: u64, exec: Exec) -> AuditSummary {
    let results = map_indexed(count, exec, |k| audit_instance(k, seed));
    let mut s = AuditSummary {
        instances: count,
        step: AUDIT_STEP,
        max_moment_residual: 0.0,
        max_equivariance_residual: 0.0,
        orbits_checked: count,
        rank_mismatches: Vec::new(),
        errors: Vec::new(),
    };
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok((m, p, mismatch)) => {
                s.max_moment_residual = s.max_moment_residual.max(m);
                s.max_equivariance_residual = s.max_equivariance_residual.max(p);
                s.rank_mismatches.extend(mismatch);
            }
            Err(e) => s.errors.push(format!("instance {k}: {e}")),
        }
    }
    let su4 = AlgebraDescriptor::su(4);
    let spectra: [[i64; 4]; 5] = [
        [3, 1, -1, -3],
        [1, 1, 0, -2],
        [2, 0, -1, -1],
        [1, 1, -1, -1],
        [3, -1, -1, -1],
    ];
    let mut rng = rng_for(seed, count as u64);
    for sp in spectra {
        let checked = (|| -> Result<Option<String>> {
            let orbit = AdjointOrbit::new(su4, &sp.map(qi))?;
            let g = Unitary::haar(4, true, &mut rng);
            let x = OrbitPoint::<f64>::base(orbit.clone()).moved(&g);
            let rank = nondegeneracy_check(&x)?;
            let expected = flag_dimension(&orbit.flag_type());
            Ok((rank != expected)
                .then(|| format!("su(4) {sp:?}: rank {rank}, expected {expected}")))
        })();
        s.orbits_checked += 1;
        match checked {
            Ok(m) => s.rank_mismatches.extend(m),
            Err(e) => s.errors.push(format!("su(4) {sp:?}: {e}")),
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KillingSweep {
    pub instances: usize,
    /// `max |B(X,Y) - 2n tr(XY)| / (‖X‖‖Y‖)`
    pub max_relative_residual: f64,
}

/// Closed form of the Killing form of su(n), `n ∈ {2,3,4,5}`.
pub fn killing_sweep(count: usize, seed: u64, exec: Exec) -> Result<KillingSweep> {
    let residuals = map_indexed(count, exec, |k| -> Result<f64> {
        let n = 2 + k % 4;
        let a = AlgebraDescriptor::su(n);
        let mut rng = rng_for(seed, k as u64);
        let x = random_element(a, &mut rng).scale(&rng.random_range(0.1..10.0));
        let y = random_element(a, &mut rng).scale(&rng.random_range(0.1..10.0));
        let b = killing_form(&x, &y)?;
        let closed = 2.0 * n as f64 * x.matrix().re_trace_product(y.matrix());
        Ok((b - closed).abs() / (x.frob_norm() * y.frob_norm()))
    });
    let max_relative_residual = residuals
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(KillingSweep {
        instances: count,
        max_relative_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CotangentSweep {
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: Vec<String>,
}

/// One cotangent instance: returns whether both actions match the center oracle.
fn cotangent_instance(k: usize, seed: u64) -> Result<bool> {
    let algebras = [
        AlgebraDescriptor::su(2),
        AlgebraDescriptor::su(3),
        AlgebraDescriptor::u(2),
    ];
    let a = algebras[k % 3];
    let mut rng = rng_for(seed, k as u64);
    let g = Unitary::random_for(a, &mut rng);
    // mix of generic, zero and (for u(2)) central covectors
    let alpha = match (k / 3) % 3 {
        1 => LieElement::zero(a),
        2 if a.family == Family::U => {
            let c: f64 = rng.random_range(-2.0..2.0);
            LieElement::i_diag(a, &[c, c])?
        }
        _ => random_element(a, &mut rng).scale(&rng.random_range(0.5..2.0)),
    };
    // oracle: central iff it is a multiple of iI (and zero in su(n))
    let m = alpha.matrix();
    let c = m.get(0, 0);
    let scalar = m
        .sub(&crate::matrix::CMat::identity(a.n).scale_c(c))
        .max_abs()
        <= 1e-12;
    let central = scalar && (a.family == Family::U || c.norm() <= 1e-12);
    let p = CotangentPoint::new(g, alpha)?;
    let left = cotangent_isotropy(&p, Action::Left)?.is_isotropic();
    let right = cotangent_isotropy(&p, Action::Right)?.is_isotropic();
    Ok(left == central && right == central)
}

/// Cotangent criterion: the orbit through `(g, α)` is isotropic iff `α` is central,
/// over su(2), su(3) and u(2).
pub fn cotangent_sweep(count: usize, seed: u64, exec: Exec) -> CotangentSweep {
    let results = map_indexed(count, exec, |k| cotangent_instance(k, seed));
    let mut s = CotangentSweep {
        instances: count,
        agreements: 0,
        disagreements: Vec::new(),
    };
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok(true) => s.agreements += 1,
            Ok(false) => s
                .disagreements
                .push(format!("instance {k}: verdicts differ")),
            Err(e) => s.disagreements.push(format!("instance {k}: {e}")),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweeps_agree_and_executors_match() {
        let s = isotropy_oracle_sweep(36, 3, Exec::Sequential);
        assert_eq!(s.agreements, 36, "{:?}", s.disagreements);
        assert!(s.isotropic > 0 && s.isotropic < 36);
        let p = isotropy_oracle_sweep(36, 3, Exec::Parallel);
        assert_eq!(p.isotropic, s.isotropic);

        let a = kks_audit(12, 1, Exec::Parallel);
        assert!(a.errors.is_empty() && a.rank_mismatches.is_empty(), "{a:?}");
        assert!(a.max_moment_residual <= 1e-6 && a.max_equivariance_residual <= 1e-8);

        assert!(
            killing_sweep(40, 2, Exec::Parallel)
                .unwrap()
                .max_relative_residual
                <= 1e-9
        );
        let c = cotangent_sweep(30, 4, Exec::Parallel);
        assert_eq!(c.agreements, 30, "{:?}", c.disagreements);
    }
}
