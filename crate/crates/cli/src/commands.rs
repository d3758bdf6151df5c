use clap::{Args, Subcommand, ValueEnum};
use num_complex::Complex64;
use orbitlab::batch::{killing_sweep, kks_audit};
use orbitlab::case_study::su3_case_study;
use orbitlab::error::{Error, Result};
use orbitlab::group::Unitary;
use orbitlab::isotropy::{
    check_isotropic, check_lagrangian_through_origin, cotangent_isotropy, Action, CotangentPoint,
};
use orbitlab::json::{element_json, unitary_json};
use orbitlab::lie::{AlgebraDescriptor, Family, LieElement};
use orbitlab::orbit::{orbit_membership_tol, AdjointOrbit, OrbitPoint, ProductOrbitPoint};
use orbitlab::product::{
    dual_check, graph_residual, graph_transitivity, isotopy_kks_invariance, isotopy_path,
    multi_flag_search, product_kks_check, shifted_lagrangian_point, ShiftedDiagonal,
};
use orbitlab::sampling::rng_for;
use orbitlab::scalar::{Scalar, Q};
use orbitlab::tightness::{
    diagonal_tightness_report, local_tightness_probe, s3_commuting_y, s3_tightness_report,
};
use orbitlab::weyl::FlagType;
use serde_json::{json, Value};

use crate::{exit, parse, ModeArg, Report, RunConfig};

/// RNG streams for named `random` unitaries, one per argument slot.
const UNITARY_STREAM: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Isotropic,
    NotIsotropic,
    Lagrangian,
}

#[derive(Debug, Args)]
pub struct CheckIsotropy {
    /// Subalgebra: so, torus, su or centralizer:<diagonal> (a size suffix like so3 is allowed).
    #[arg(long)]
    pub l: String,
    /// Diagonal of iH, comma-separated rationals; shifted to trace zero if needed.
    #[arg(long)]
    pub flag: String,
    /// Move the point to Ad(g)(iH); forces the float track unless g is the identity.
    #[arg(long)]
    pub g: Option<String>,
    /// Explicit point on the orbit (JSON matrix or @file).
    #[arg(long, conflicts_with = "g")]
    pub point: Option<String>,
    /// Exit 1 unless the verdict matches.
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Left,
    Right,
    Both,
}

#[derive(Debug, Args)]
pub struct CotangentCheck {
    /// su2, su3, u2, ... (or su(2)).
    #[arg(long, default_value = "su2")]
    pub algebra: String,
    #[arg(long, default_value = "identity")]
    pub g: String,
    /// X_α as a diagonal or a JSON matrix.
    #[arg(long)]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "both")]
    pub action: ActionArg,
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
}

#[derive(Debug, Args)]
pub struct ProductDual {
    #[arg(long)]
    pub h1: String,
    #[arg(long)]
    pub h2: String,
}

#[derive(Debug, Args)]
pub struct ShiftedLagrangian {
    /// The shift m: identity, k, random, perm:..., JSON or @file.
    #[arg(long, default_value = "identity")]
    pub m: String,
    #[arg(long, default_value = "1,0,-1")]
    pub h: String,
    /// The graph point is (Ad(u)iH, -Ad(m u)iH).
    #[arg(long, default_value = "random")]
    pub u: String,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 200)]
    pub transitivity_samples: usize,
}

#[derive(Debug, Args)]
pub struct Isotopy {
    #[arg(long)]
    pub m1: String,
    #[arg(long)]
    pub m2: String,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value = "1,0,-1")]
    pub h: String,
    #[arg(long, default_value = "random")]
    pub u: String,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Flag type as a diagonal (e.g. 1,1,-2 for Gr2).
    #[arg(long)]
    pub ft: String,
    #[arg(long)]
    pub y: String,
    #[arg(long)]
    pub z: String,
    #[arg(long, default_value = "identity")]
    pub m: String,
}

#[derive(Debug, Subcommand)]
pub enum Tightness {
    /// Graph Lagrangian of a (shifted) diagonal action.
    Diagonal(PairArgs),
    /// S3 in the maximal flag of su(3).
    S3 {
        /// Two complex numbers, e.g. 1,0 or 1+i,-2i.
        #[arg(long)]
        beta: String,
        /// Y in u_H: JSON matrix, or commuting:<s> for the commuting family.
        #[arg(long, default_value = "commuting:0")]
        y: String,
    },
    /// Count of L ∩ g(L) for g = (e^{tY}, e^{tZ}) against the infinitesimal count.
    Probe {
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        pair: PairArgs,
    },
}

#[derive(Debug, Args)]
pub struct KksAudit {
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 500)]
    pub killing_samples: usize,
}

#[derive(Debug, Args)]
pub struct MultiflagSearch {
    /// One diagonal per flag; repeat at least twice.
    #[arg(long = "h", required = true, num_args = 1)]
    pub hs: Vec<String>,
    /// Shifts m_1..m_{p-1}; omit for identities.
    #[arg(long = "shift", num_args = 1)]
    pub shifts: Vec<String>,
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
}

pub fn dispatch(cmd: &crate::Command, cfg: &RunConfig) -> (&'static str, Result<Report>) {
    use crate::Command as C;
    match cmd {
        C::CheckIsotropy(a) => ("check-isotropy", check_isotropy(a, cfg)),
        C::Su3CaseStudy => ("su3-case-study", case_study(cfg)),
        C::CotangentCheck(a) => ("cotangent-check", cotangent(a, cfg)),
        C::ProductDual(a) => ("product-dual", product_dual(a)),
        C::ShiftedLagrangian(a) => ("shifted-lagrangian", shifted(a, cfg)),
        C::Isotopy(a) => ("isotopy", isotopy(a, cfg)),
        C::Tightness { which } => match which {
            Tightness::Diagonal(p) => ("tightness diagonal", tight_diagonal(p, cfg)),
            Tightness::S3 { beta, y } => ("tightness s3", tight_s3(beta, y)),
            Tightness::Probe { t, pair } => ("tightness probe", tight_probe(*t, pair, cfg)),
        },
        C::KksAudit(a) => ("kks-audit", audit(a, cfg)),
        C::MultiflagSearch(a) => ("multiflag-search", multiflag(a, cfg)),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn code(ok: bool) -> i32 {
    if ok {
        exit::PASS
    } else {
        exit::ASSERTION_FAILED
    }
}

fn named_unitary(s: &str, n: usize, special: bool, slot: u64, cfg: &RunConfig) -> Result<Unitary> {
    let mut rng = rng_for(cfg.seed, UNITARY_STREAM + slot);
    parse::unitary(s, n, special, &mut rng)
}

fn expectation_met(expect: Option<Expect>, isotropic: bool, lagrangian: bool) -> bool {
    match expect {
        None => true,
        Some(Expect::Isotropic) => isotropic,
        Some(Expect::NotIsotropic) => !isotropic,
        Some(Expect::Lagrangian) => lagrangian,
    }
}

fn check_isotropy(a: &CheckIsotropy, cfg: &RunConfig) -> Result<Report> {
    let mut notes = Vec::new();
    let h = parse::su_diagonal(&a.flag, "flag", &mut notes)?;
    let alg = h.algebra();
    let moved = match &a.g {
        Some(g) => Some(named_unitary(g, alg.n, true, 0, cfg)?),
        None => None,
    };
    let moves = moved
        .as_ref()
        .is_some_and(|g| *g != Unitary::identity(alg.n));
    let exact = match cfg.mode {
        ModeArg::Exact if moves => {
            return Err(Error::Domain(
                "--mode exact cannot move the point by a float unitary".into(),
            ))
        }
        ModeArg::Exact => true,
        ModeArg::Float => false,
        ModeArg::Auto => !moves,
    };
    let body = if exact {
        isotropy_body::<Q>(a, &h, None, cfg, &mut notes)?
    } else {
        isotropy_body::<f64>(a, &h, moved.filter(|_| moves), cfg, &mut notes)?
    };
    let iso = body["verdict"] == "isotropic";
    let lag = body["lagrangian"] == true;
    Ok(Report {
        code: code(expectation_met(a.expect, iso, lag)),
        body,
        notes,
    })
}

fn isotropy_body<S: Scalar>(
    a: &CheckIsotropy,
    h: &LieElement<Q>,
    g: Option<Unitary>,
    cfg: &RunConfig,
    notes: &mut Vec<String>,
) -> Result<Value> {
    let alg = h.algebra();
    let l = parse::subalgebra::<S>(&a.l, alg, notes)?;
    let orbit = AdjointOrbit::through_diagonal(h)?;
    let report = match (&a.point, g) {
        (Some(p), _) => {
            let x: LieElement<S> = parse::element(p, alg, "point", notes)?;
            let x = OrbitPoint::new_with_tol(orbit.clone(), x, cfg.spectral_tol)?;
            check_isotropic(&l, &x, cfg.seed)?
        }
        (None, Some(g)) => {
            let x = OrbitPoint::<f64>::at_diagonal(h)?.moved(&g);
            let l64 = parse::subalgebra::<f64>(&a.l, alg, &mut Vec::new())?;
            check_isotropic(&l64, &x, cfg.seed)?
        }
        (None, None) => check_lagrangian_through_origin(&l, h, cfg.seed)?,
    };
    let half = report.flag_dim / 2;
    Ok(merge(
        to_value(&report),
        json!({
            "subalgebra": {"spec": a.l, "rank": l.rank()},
            "orbit": to_value(&orbit),
            "halfFlagDim": half,
            "orbitDimIsHalf": report.orbit_dim == half,
        }),
    ))
}

fn case_study(cfg: &RunConfig) -> Result<Report> {
    let r = su3_case_study(cfg.seed)?;
    Ok(Report {
        code: code(r.passed),
        body: to_value(&r),
        notes: Vec::new(),
    })
}

fn algebra_arg(s: &str) -> Result<AlgebraDescriptor> {
    let t: String = s.chars().filter(|c| !"() ".contains(*c)).collect();
    let k = t
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Parse(format!("algebra {s:?} needs a size, e.g. su2")))?;
    let n: usize = t[k..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad algebra size in {s:?}")))?;
    AlgebraDescriptor::new(Family::parse(&t[..k])?, n)
}

fn cotangent(a: &CotangentCheck, cfg: &RunConfig) -> Result<Report> {
    let alg = algebra_arg(&a.algebra)?;
    if alg.family == Family::So {
        return Err(Error::Domain(
            "cotangent-check supports su(n) and u(n)".into(),
        ));
    }
    let mut notes = Vec::new();
    let g = named_unitary(&a.g, alg.n, alg.family == Family::Su, 0, cfg)?;
    let alpha: LieElement<f64> = parse::element(&a.alpha, alg, "alpha", &mut notes)?;
    let p = CotangentPoint::new(g.clone(), alpha.clone())?;
    let actions: &[(Action, &str)] = match a.action {
        ActionArg::Left => &[(Action::Left, "left")],
        ActionArg::Right => &[(Action::Right, "right")],
        ActionArg::Both => &[(Action::Left, "left"), (Action::Right, "right")],
    };
    let mut body = json!({
        "algebra": to_value(&alg),
        "g": unitary_json(&g),
        "alpha": element_json(&alpha),
    });
    let mut ok = true;
    for (action, key) in actions {
        let r = cotangent_isotropy(&p, *action)?;
        ok &= expectation_met(a.expect, r.is_isotropic(), r.lagrangian);
        body[*key] = to_value(&r);
    }
    Ok(Report {
        code: code(ok),
        body,
        notes,
    })
}

fn product_dual(a: &ProductDual) -> Result<Report> {
    let mut notes = Vec::new();
    let h1 = parse::su_diagonal(&a.h1, "h1", &mut notes)?;
    let h2 = parse::su_diagonal(&a.h2, "h2", &mut notes)?;
    let r = dual_check(&h1, &h2)?;
    Ok(Report {
        code: exit::PASS,
        body: to_value(&r),
        notes,
    })
}

fn product_point_json(p: &ProductOrbitPoint<f64>) -> Value {
    json!({"left": element_json(p.left.element()), "right": element_json(p.right.element())})
}

fn shifted(a: &ShiftedLagrangian, cfg: &RunConfig) -> Result<Report> {
    let mut notes = Vec::new();
    let h = parse::su_diagonal(&a.h, "h", &mut notes)?;
    let alg = h.algebra();
    let m = named_unitary(&a.m, alg.n, true, 0, cfg)?;
    let u = named_unitary(&a.u, alg.n, true, 1, cfg)?;
    let d = ShiftedDiagonal::new(alg, m.clone())?;
    let p = shifted_lagrangian_point(&d, &u, &h)?;
    let kks = product_kks_check(&p, &d, a.samples, cfg.seed, cfg.exec)?;
    let transitivity = graph_transitivity(&d, &h, a.transitivity_samples, cfg.seed, cfg.exec)?;
    let passed =
        kks.lagrangian && kks.max_residual <= cfg.residual_tol && transitivity <= cfg.residual_tol;
    Ok(Report {
        code: code(passed),
        body: json!({
            "m": unitary_json(&m),
            "point": product_point_json(&p),
            "graphResidual": graph_residual(&p, &d),
            "kks": to_value(&kks),
            "transitivitySamples": a.transitivity_samples,
            "transitivityResidual": transitivity,
            "passed": passed,
        }),
        notes,
    })
}

fn isotopy(a: &Isotopy, cfg: &RunConfig) -> Result<Report> {
    let mut notes = Vec::new();
    let h = parse::su_diagonal(&a.h, "h", &mut notes)?;
    let alg = h.algebra();
    let m1 = named_unitary(&a.m1, alg.n, true, 0, cfg)?;
    let m2 = named_unitary(&a.m2, alg.n, true, 1, cfg)?;
    let u = named_unitary(&a.u, alg.n, true, 2, cfg)?;
    let d1 = ShiftedDiagonal::new(alg, m1.clone())?;
    let d2 = ShiftedDiagonal::new(alg, m2.clone())?;
    let p = shifted_lagrangian_point(&d1, &u, &h)?;
    let step = isotopy_path(&m1, &m2, a.t, &p)?;
    let q = &step.point;
    let invariance = isotopy_kks_invariance(&m1, &m2, a.t, &p, a.samples, cfg.seed)?;
    let spectra = [&q.left, &q.right]
        .iter()
        .all(|s| orbit_membership_tol(s.element(), s.orbit(), cfg.spectral_tol));
    let moved = q
        .right
        .element()
        .matrix()
        .max_diff(p.right.element().matrix());
    let to_m2 = graph_residual(q, &d2);
    let endpoint_ok = if a.t == 0.0 {
        moved <= cfg.residual_tol
    } else if a.t == 1.0 {
        to_m2 <= cfg.residual_tol
    } else {
        true
    };
    notes.extend(step.branch_warning.clone());
    let passed = spectra && invariance <= cfg.residual_tol && endpoint_ok;
    Ok(Report {
        code: code(passed),
        body: json!({
            "t": a.t,
            "start": product_point_json(&p),
            "point": product_point_json(q),
            "generator": element_json(&step.generator),
            "branchWarning": step.branch_warning,
            "startResidualM1": graph_residual(&p, &d1),
            "residualToM2Graph": to_m2,
            "displacement": moved,
            "spectraPreserved": spectra,
            "kksInvarianceResidual": invariance,
            "passed": passed,
        }),
        notes,
    })
}

struct Pair {
    ft: FlagType,
    y: LieElement<f64>,
    z: LieElement<f64>,
    d: ShiftedDiagonal,
}

fn pair_args(p: &PairArgs, cfg: &RunConfig, notes: &mut Vec<String>) -> Result<Pair> {
    let h = parse::su_diagonal(&p.ft, "ft", notes)?;
    let alg = h.algebra();
    let ft = orbitlab::weyl::flag_type_of(&h)?;
    let y = parse::element(&p.y, alg, "y", notes)?;
    let z = parse::element(&p.z, alg, "z", notes)?;
    let m = named_unitary(&p.m, alg.n, true, 0, cfg)?;
    Ok(Pair {
        ft,
        y,
        z,
        d: ShiftedDiagonal::new(alg, m)?,
    })
}

fn tight_diagonal(p: &PairArgs, cfg: &RunConfig) -> Result<Report> {
    let mut notes = Vec::new();
    let pr = pair_args(p, cfg, &mut notes)?;
    let r = diagonal_tightness_report(&pr.y, &pr.z, &pr.ft, &pr.d)?;
    Ok(Report {
        code: code(r.tight),
        body: merge(to_value(&r), json!({"flagType": to_value(&pr.ft)})),
        notes,
    })
}

fn tight_s3(beta: &str, y: &str) -> Result<Report> {
    let beta: [Complex64; 2] = parse::complex_pair(beta)?;
    let mut notes = Vec::new();
    let y: LieElement<f64> = match y.strip_prefix("commuting:") {
        Some(s) => s3_commuting_y(beta, orbitlab::scalar::parse_rational(s)?.to_f64()),
        None => parse::element(y, AlgebraDescriptor::su(3), "y", &mut notes)?,
    };
    let r = s3_tightness_report(beta, &y)?;
    Ok(Report {
        code: code(r.tight),
        body: merge(
            to_value(&r),
            json!({"beta": [[beta[0].re, beta[0].im], [beta[1].re, beta[1].im]], "y": element_json(&y)}),
        ),
        notes,
    })
}

fn tight_probe(t: f64, p: &PairArgs, cfg: &RunConfig) -> Result<Report> {
    let mut notes = Vec::new();
    let pr = pair_args(p, cfg, &mut notes)?;
    let infinitesimal = diagonal_tightness_report(&pr.y, &pr.z, &pr.ft, &pr.d)?;
    let count = local_tightness_probe(&pr.d, &pr.y, &pr.z, &pr.ft, t)?;
    let agree = count == infinitesimal.fixed_points;
    Ok(Report {
        code: code(agree),
        body: json!({
            "t": t,
            "intersectionPoints": count,
            "fixedPoints": infinitesimal.fixed_points,
            "bettiSum": infinitesimal.betti_sum,
            "tight": infinitesimal.tight && agree,
            "flagType": to_value(&pr.ft),
        }),
        notes,
    })
}

fn audit(a: &KksAudit, cfg: &RunConfig) -> Result<Report> {
    let s = kks_audit(a.samples, cfg.seed, cfg.exec);
    let k = killing_sweep(a.killing_samples, cfg.seed, cfg.exec)?;
    let passed = s.errors.is_empty()
        && s.rank_mismatches.is_empty()
        && s.max_moment_residual <= 1e-6
        && s.max_equivariance_residual <= cfg.residual_tol
        && k.max_relative_residual <= 1e-9;
    Ok(Report {
        code: code(passed),
        body: json!({"audit": to_value(&s), "killing": to_value(&k), "passed": passed}),
        notes: Vec::new(),
    })
}

fn multiflag(a: &MultiflagSearch, cfg: &RunConfig) -> Result<Report> {
    let mut notes = Vec::new();
    let hs: Vec<LieElement<Q>> =
        a.hs.iter()
            .enumerate()
            .map(|(k, s)| parse::su_diagonal(s, &format!("h[{k}]"), &mut notes))
            .collect::<Result<_>>()?;
    let n = hs[0].algebra().n;
    let shifts: Vec<Unitary> = a
        .shifts
        .iter()
        .enumerate()
        .map(|(k, s)| named_unitary(s, n, true, k as u64, cfg))
        .collect::<Result<_>>()?;
    let r = multi_flag_search(&hs, &shifts, a.budget, cfg.seed, cfg.exec)?;
    let certified_absent = r.duality.as_ref().is_some_and(|d| !d.dual);
    let code = if r.found || certified_absent {
        exit::PASS
    } else {
        exit::INCONCLUSIVE
    };
    Ok(Report {
        code,
        body: json!({
            "found": r.found,
            "stage": r.stage,
            "residual": r.residual,
            "witness": r.witness.as_ref().map(|w| w.iter().map(unitary_json).collect::<Vec<_>>()),
            "evaluations": r.evaluations,
            "restarts": r.restarts,
            "note": r.note,
            "duality": r.duality.as_ref().map(to_value),
            "nonexistenceCertified": certified_absent,
        }),
        notes,
    })
}
