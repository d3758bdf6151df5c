//! The su(3) case study for `U_H`, `H = i·diag{2,-1,-1}`: isotropic orbits in the
//! three flag types CP², Gr₂(3,C) and F(1,2).

use num_complex::{Complex, Complex64};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::group::Unitary;
use crate::isotropy::{check_isotropic, IsotropyReport};
use crate::lie::{centralizer, AlgebraDescriptor, LieElement, Subalgebra, Subspace};
use crate::matrix::CMat;
use crate::orbit::{orbit_membership, AdjointOrbit, OrbitPoint};
use crate::sampling;
use crate::scalar::{q, qi, Q};

/// Residual tolerance for the float parts of the case study.
pub const CASE_TOL: f64 = 1e-8;
/// Sample size for the sampled transitivity and orbit-type checks.
pub const CASE_SAMPLES: usize = 200;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseReport {
    pub id: String,
    pub flag: String,
    pub orbit_spectrum: Vec<String>,
    pub flag_dim: usize,
    pub claim: String,
    pub claim_holds: bool,
    /// Diagonal of the named point, as imaginary parts.
    pub named_point: Vec<String>,
    pub isotropy_at_named_point: IsotropyReport,
    /// Points of (u_H')^⊥ on this orbit type found by the derivation (imaginary diagonals,
    /// or the matrix rows for the F(1,2) sample point).
    pub intersection: Vec<String>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseStudyReport {
    pub h: Vec<String>,
    pub centralizer_rank: usize,
    pub derived_rank: usize,
    pub complement_rank: usize,
    pub checks: Vec<Check>,
    pub cases: Vec<CaseReport>,
    pub passed: bool,
    pub failing_cases: Vec<String>,
}

type Poly = Vec<Q>;

fn poly(c: &[i64]) -> Poly {
    c.iter().map(|&v| qi(v)).collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    out
}

fn poly_eval(p: &Poly, a: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * a + c)
}

fn cq(re: Q, im: Q) -> Complex<Q> {
    Complex::new(re, im)
}

fn su3() -> AlgebraDescriptor {
    AlgebraDescriptor::su(3)
}

fn diag_el(v: &[i64]) -> LieElement<Q> {
    LieElement::i_diag(su3(), &v.iter().map(|&x| qi(x)).collect::<Vec<_>>()).unwrap()
}

fn qstrings(v: &[i64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `X(t, z, w)`: the parametrized family spanning `(u_H')^⊥`.
pub fn complement_family(t: Q, z: Complex<Q>, w: Complex<Q>) -> LieElement<Q> {
    let zero = || cq(Q::zero(), Q::zero());
    let m = CMat::from_rows(vec![
        vec![cq(Q::zero(), qi(2) * &t), z.clone(), w.clone()],
        vec![-z.conj(), cq(Q::zero(), -t.clone()), zero()],
        vec![-w.conj(), zero(), cq(Q::zero(), -t)],
    ])
    .unwrap();
    LieElement::new(su3(), m).expect("family lies in su(3)")
}

/// `X_β` with `β` in the (1,2), (1,3) positions.
pub fn x_beta(beta: [Complex64; 2]) -> LieElement<f64> {
    let z = Complex64::new(0.0, 0.0);
    let m = CMat::from_rows(vec![
        vec![z, beta[0], beta[1]],
        vec![-beta[0].conj(), z, z],
        vec![-beta[1].conj(), z, z],
    ])
    .unwrap();
    LieElement::new(su3(), m).expect("X_beta lies in su(3)")
}

/// `λ³ + Fλ + G` with `F = 3t² + |z|² + |w|²`, `G = it(2t² + |z|² + |w|²)`.
fn predicted_char_poly(t: &Q, z: &Complex<Q>, w: &Complex<Q>) -> Vec<Complex<Q>> {
    let r = z.norm_sqr() + w.norm_sqr();
    let f = qi(3) * t * t + &r;
    let g = t * (qi(2) * t * t + &r);
    vec![
        cq(Q::zero(), g),
        cq(f, Q::zero()),
        cq(Q::zero(), Q::zero()),
        cq(Q::one(), Q::zero()),
    ]
}

#[derive(Debug, PartialEq)]
enum OrbitKind {
    Cp2,
    Gr2,
    Other,
}

/// Orbit type of a trace-zero anti-Hermitian 3x3 matrix from `λ³ + Fλ + ig`:
/// a repeated eigenvalue iff `4F³ = 27g²`; the simple eigenvalue is positive iff `g > 0`.
fn orbit_kind(cp: &[Complex<Q>]) -> OrbitKind {
    let f = &cp[1].re;
    let g = &cp[0].im;
    if f.is_positive() && qi(4) * f * f * f == qi(27) * g * g {
        if g.is_positive() {
            OrbitKind::Cp2
        } else {
            OrbitKind::Gr2
        }
    } else {
        OrbitKind::Other
    }
}

fn random_params<R: Rng>(rng: &mut R, force_zero_zw: bool) -> (Q, Complex<Q>, Complex<Q>) {
    let mut small = || q(rng.random_range(-4..=4), rng.random_range(1..=3));
    let t = small();
    if force_zero_zw {
        return (t, cq(Q::zero(), Q::zero()), cq(Q::zero(), Q::zero()));
    }
    let z = cq(small(), small());
    let w = cq(small(), small());
    (t, z, w)
}

/// The unitary rotation `k` with `Ad(k)(i·diag{1,0,-1}) = (0,0,i;0,0,0;i,0,0)`.
pub fn k_matrix() -> Unitary {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |v: f64| Complex64::new(v, 0.0);
    let m = CMat::from_rows(vec![
        vec![c(s), c(0.0), c(-s)],
        vec![c(0.0), c(1.0), c(0.0)],
        vec![c(s), c(0.0), c(s)],
    ])
    .unwrap();
    Unitary::new_special(m).expect("k is a rotation")
}

/// Element of `U_H` sending `X_{(0,i)}` to `X_γ` for a unit `γ`: `diag(1, B)` with
/// `B ∈ SU(2)`, `(0, i)·B† = γ`.
fn transporter(gamma: [Complex64; 2]) -> Unitary {
    let i = Complex64::new(0.0, 1.0);
    let (a, b) = (-i * gamma[0], -i * gamma[1]);
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    // B† has rows (b̄, -ā) and (a, b)
    let b_dag = [[b.conj(), -a.conj()], [a, b]];
    let m = CMat::from_rows(vec![
        vec![one, z, z],
        vec![z, b_dag[0][0].conj(), b_dag[1][0].conj()],
        vec![z, b_dag[0][1].conj(), b_dag[1][1].conj()],
    ])
    .unwrap();
    Unitary::new_special(m).expect("transporter is in SU(3)")
}

struct Setup {
    h: LieElement<Q>,
    u_h: Subalgebra<Q>,
    derived: Subalgebra<Q>,
    complement: Subspace<Q>,
}

fn in_complement_f64(derived: &Subalgebra<Q>, x: &LieElement<f64>) -> f64 {
    derived
        .basis()
        .iter()
        .map(|d| {
            crate::lie::scalar_product(x, &d.to_f64())
                .map(f64::abs)
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

fn case_i(s: &Setup, seed: u64) -> Result<CaseReport> {
    let mut checks = Vec::new();
    let cp2 = AdjointOrbit::new(su3(), &[qi(2), qi(-1), qi(-1)])?;

    // t = 0: det X = 0, but det D = -2ia³ ≠ 0 for a > 0.
    let cp = complement_family(Q::zero(), cq(qi(1), qi(2)), cq(qi(-1), qi(1)))
        .matrix()
        .char_poly();
    checks.push(check(
        "t=0 excluded",
        cp[0].is_zero() && orbit_kind(&cp) == OrbitKind::Other,
        "at t=0 the determinant vanishes while D is invertible",
    ));

    // t = 1: 2a³ - 3a² + 1 = (a-1)²(2a+1).
    let p_plus = poly(&[1, 0, -3, 2]);
    let fact = poly_mul(&poly_mul(&poly(&[-1, 1]), &poly(&[-1, 1])), &poly(&[1, 2]));
    let roots_plus = [qi(1), q(-1, 2)];
    let plus_ok = p_plus == fact && roots_plus.iter().all(|r| poly_eval(&p_plus, r).is_zero());
    // the only positive root a = 1 gives |z|²+|w|² = 2a³ - 2 = 0
    let r_at_one = qi(2) - qi(2);
    checks.push(check(
        "t=+1 roots",
        plus_ok && r_at_one.is_zero(),
        "2a^3-3a^2+1 = (a-1)^2(2a+1); a=1 forces z=w=0, giving X = i·diag{2,-1,-1}",
    ));

    // t = -1: 2a³ + 3a² - 1 = (a+1)²(2a-1).
    let p_minus = poly(&[-1, 0, 3, 2]);
    let fact = poly_mul(&poly_mul(&poly(&[1, 1]), &poly(&[1, 1])), &poly(&[-1, 2]));
    let half = q(1, 2);
    let r_at_half = qi(3) * &half * &half - qi(3);
    checks.push(check(
        "t=-1 roots",
        p_minus == fact && r_at_half == q(-9, 4),
        "2a^3+3a^2-1 = (a+1)^2(2a-1); a=1/2 needs |z|^2+|w|^2 = -9/4, no solution",
    ));

    // Sampled oracle: CP²-type points of the family are exactly z = w = 0, t > 0.
    let mut rng = sampling::rng_for(seed, 1);
    let mut sampled_ok = true;
    for k in 0..CASE_SAMPLES {
        let (t, z, w) = random_params(&mut rng, k % 10 == 0);
        let x = complement_family(t.clone(), z.clone(), w.clone());
        let cp = x.matrix().char_poly();
        let predicted = predicted_char_poly(&t, &z, &w);
        let expect_cp2 = z.is_zero() && w.is_zero() && t.is_positive();
        sampled_ok &= cp == predicted && (orbit_kind(&cp) == OrbitKind::Cp2) == expect_cp2;
    }
    checks.push(check(
        "sampled orbit types",
        sampled_ok,
        format!("{CASE_SAMPLES} rational points of (u_H')^⊥: char poly = λ³+Fλ+G and CP²-type iff z=w=0, t>0"),
    ));

    let point = s.h.clone();
    let member = s.complement.contains(&point) && orbit_membership(&point, &cp2);
    checks.push(check(
        "iH in intersection",
        member,
        "iH lies in (u_H')^⊥ and on its own orbit",
    ));
    let x = OrbitPoint::new(cp2.clone(), point)?;
    let iso = check_isotropic(&s.u_h, &x, seed)?;
    checks.push(check(
        "trivial orbit",
        iso.is_isotropic() && iso.orbit_dim == 0,
        format!("U_H-orbit through iH has dimension {}", iso.orbit_dim),
    ));
    let claim_holds = checks.iter().all(|c| c.passed);
    Ok(CaseReport {
        id: "i".into(),
        flag: "CP2".into(),
        orbit_spectrum: qstrings(&[2, -1, -1]),
        flag_dim: cp2.flag_dimension(),
        claim: "the only isotropic U_H-orbit in the CP2-type orbit is the point iH".into(),
        claim_holds,
        named_point: qstrings(&[2, -1, -1]),
        isotropy_at_named_point: iso,
        intersection: vec!["diag{2,-1,-1}".into()],
        checks,
    })
}

fn case_ii(s: &Setup, seed: u64) -> Result<CaseReport> {
    let mut checks = Vec::new();
    let gr2 = AdjointOrbit::new(su3(), &[qi(1), qi(1), qi(-2)])?;

    // t = 1 repeats the t = -1 polynomial of case (i): no admissible root.
    let p_plus = poly(&[-1, 0, 3, 2]);
    checks.push(check(
        "t=+1 roots",
        poly_eval(&p_plus, &q(1, 2)).is_zero() && poly_eval(&p_plus, &qi(-1)).is_zero(),
        "2a^3+3a^2-1: a=1/2 forces |z|^2+|w|^2 = -9/4, no solution",
    ));
    // t = -1: 2a³ + 3a² - 5 = (a-1)(2a²+5a+5), discriminant -15.
    let p_minus = poly(&[-5, 0, 3, 2]);
    let quad = poly(&[5, 5, 2]);
    let disc = &quad[1] * &quad[1] - qi(4) * &quad[2] * &quad[0];
    checks.push(check(
        "t=-1 roots",
        p_minus == poly_mul(&poly(&[-1, 1]), &quad) && disc == qi(-15),
        "2a^3+3a^2-5 = (a-1)(2a^2+5a+5), disc -15; a=1 forces z=w=0",
    ));

    // The solution X(t=-1, 0, 0) = i·diag{-2,1,1}.
    let solution = complement_family(qi(-1), cq(Q::zero(), Q::zero()), cq(Q::zero(), Q::zero()));
    let sol_ok = solution == diag_el(&[-2, 1, 1])
        && s.complement.contains(&solution)
        && orbit_membership(&solution, &gr2);
    checks.push(check(
        "solution point",
        sol_ok,
        "the unique point of (u_H')^⊥ on the Gr2-type orbit is i·diag{-2,1,1} = -H",
    ));

    let mut rng = sampling::rng_for(seed, 2);
    let mut sampled_ok = true;
    for k in 0..CASE_SAMPLES {
        let (t, z, w) = random_params(&mut rng, k % 10 == 0);
        let cp = complement_family(t.clone(), z.clone(), w.clone())
            .matrix()
            .char_poly();
        let expect_gr2 = z.is_zero() && w.is_zero() && t.is_negative();
        sampled_ok &= (orbit_kind(&cp) == OrbitKind::Gr2) == expect_gr2;
    }
    checks.push(check(
        "sampled orbit types",
        sampled_ok,
        format!("{CASE_SAMPLES} rational points of (u_H')^⊥: Gr2-type iff z=w=0, t<0"),
    ));

    let sol_point = OrbitPoint::new(gr2.clone(), solution)?;
    let sol_iso = check_isotropic(&s.u_h, &sol_point, seed)?;
    checks.push(check(
        "orbit through solution",
        sol_iso.is_isotropic(),
        format!(
            "U_H-orbit through i·diag{{-2,1,1}}: isotropic, dimension {}",
            sol_iso.orbit_dim
        ),
    ));

    // ad(Y)x at x = diag{i,i,-2i} for a generic Y in u_H.
    let (t, z) = (q(3, 2), cq(qi(2), qi(-1)));
    let y = LieElement::new(
        su3(),
        CMat::from_rows(vec![
            vec![
                cq(Q::zero(), qi(2) * &t),
                cq(Q::zero(), Q::zero()),
                cq(Q::zero(), Q::zero()),
            ],
            vec![
                cq(Q::zero(), Q::zero()),
                cq(Q::zero(), -t.clone()),
                z.clone(),
            ],
            vec![
                cq(Q::zero(), Q::zero()),
                -z.conj(),
                cq(Q::zero(), -t.clone()),
            ],
        ])
        .unwrap(),
    )?;
    let named = diag_el(&[1, 1, -2]);
    let ad = y.bracket(&named)?;
    let minus_3i = cq(Q::zero(), qi(-3));
    let mut expect = CMat::<Q>::zeros(3);
    expect.set(1, 2, minus_3i.clone() * z.clone());
    expect.set(2, 1, minus_3i * z.conj());
    checks.push(check(
        "tangent block",
        *ad.matrix() == expect && s.u_h.contains(&y),
        "ad(Y)(i·diag{1,1,-2}) = (0,0,0; 0,0,-3iz; 0,-3iz̄,0)",
    ));

    let x = OrbitPoint::new(gr2.clone(), named)?;
    let iso = check_isotropic(&s.u_h, &x, seed)?;
    let claim_holds = iso.is_isotropic() && iso.lagrangian && iso.orbit_dim == 2;
    checks.push(check(
        "stated Lagrangian orbit",
        claim_holds,
        format!(
            "U_H-orbit through i·diag{{1,1,-2}}: {:?}, dimension {}, flag dimension {}",
            iso.verdict, iso.orbit_dim, iso.flag_dim
        ),
    ));
    Ok(CaseReport {
        id: "ii".into(),
        flag: "Gr2".into(),
        orbit_spectrum: qstrings(&[1, 1, -2]),
        flag_dim: gr2.flag_dimension(),
        claim: "the unique isotropic U_H-orbit in Gr2(3,C) passes through i·diag{1,1,-2}, \
                has dimension 2 and is Lagrangian"
            .into(),
        claim_holds,
        named_point: qstrings(&[1, 1, -2]),
        isotropy_at_named_point: iso,
        intersection: vec!["diag{-2,1,1}".into()],
        checks,
    })
}

fn case_iii(s: &Setup, seed: u64) -> Result<CaseReport> {
    let mut checks = Vec::new();
    let flag = AdjointOrbit::new(su3(), &[qi(1), qi(0), qi(-1)])?;

    // A zero eigenvalue forces det X = -it(2t²+|z|²+|w|²) = 0, i.e. t = 0.
    let mut rng = sampling::rng_for(seed, 3);
    let mut t_forced = true;
    for _ in 0..CASE_SAMPLES {
        let (t, z, w) = random_params(&mut rng, false);
        let cp = complement_family(t.clone(), z.clone(), w.clone())
            .matrix()
            .char_poly();
        let singular = cp[0].is_zero();
        t_forced &= cp == predicted_char_poly(&t, &z, &w) && singular == t.is_zero();
    }
    checks.push(check(
        "t forced to 0",
        t_forced,
        "on sampled rational parameters det X = 0 iff t = 0",
    ));

    // The point Ad(k)(i·diag{1,0,-1}), computed exactly as ½·K·D·Kᵀ.
    let k_int = [[1i64, 0, -1], [0, 0, 0], [1, 0, 1]];
    let d = diag_el(&[1, 0, -1]);
    let kk = CMat::from_fn(3, |i, j| cq(qi(k_int[i][j]), Q::zero()));
    let p_exact = kk.mul(d.matrix()).mul(&kk.adjoint()).scale(&q(1, 2));
    let p = LieElement::new(su3(), p_exact)?;
    let expected = complement_family(Q::zero(), cq(Q::zero(), Q::zero()), cq(Q::zero(), qi(1)));
    let k_float = k_matrix().ad(&d.to_f64());
    let float_res = k_float.matrix().max_diff(expected.to_f64().matrix());
    checks.push(check(
        "Ad(k) point",
        p == expected && float_res <= CASE_TOL,
        format!("Ad(k)(i·diag{{1,0,-1}}) = (0,0,i;0,0,0;i,0,0); float residual {float_res:.2e}"),
    ));
    let on = s.complement.contains(&p) && orbit_membership(&p, &flag);
    checks.push(check(
        "point in intersection",
        on,
        "t=0, (z,w)=(0,i), |z|^2+|w|^2 = 1",
    ));

    let x = OrbitPoint::new(flag.clone(), p.clone())?;
    let iso = check_isotropic(&s.u_h, &x, seed)?;
    checks.push(check(
        "S3 orbit",
        iso.is_isotropic() && iso.orbit_dim == 3 && iso.lagrangian,
        format!(
            "U_H-orbit rank {} in a flag of dimension {}",
            iso.orbit_dim, iso.flag_dim
        ),
    ));

    // Sampled transitivity: every sampled S³ point is Ad(u)p for an explicit u ∈ U_H,
    // and random elements of U_H keep p in the intersection.
    let h_f = s.h.to_f64();
    let p_f = p.to_f64();
    let u_h_f = Subspace::span(
        su3(),
        &s.u_h.basis().iter().map(|b| b.to_f64()).collect::<Vec<_>>(),
    )?;
    let mut worst: f64 = 0.0;
    let mut rng = sampling::rng_for(seed, 4);
    for _ in 0..CASE_SAMPLES {
        let g: [Complex64; 2] = [
            Complex64::new(
                rng.sample(rand_distr::StandardNormal),
                rng.sample(rand_distr::StandardNormal),
            ),
            Complex64::new(
                rng.sample(rand_distr::StandardNormal),
                rng.sample(rand_distr::StandardNormal),
            ),
        ];
        let norm = (g[0].norm_sqr() + g[1].norm_sqr()).sqrt();
        let gamma = [g[0] / norm, g[1] / norm];
        let target = x_beta(gamma);
        let u = transporter(gamma);
        let fixes_h = u.ad(&h_f).matrix().max_diff(h_f.matrix());
        let moved = u.ad(&p_f).matrix().max_diff(target.matrix());
        let perp = in_complement_f64(&s.derived, &target);
        let on_orbit = if orbit_membership(&target, &flag) {
            0.0
        } else {
            f64::INFINITY
        };
        worst = worst.max(fixes_h).max(moved).max(perp).max(on_orbit);

        let a = sampling::random_in(&u_h_f, &mut rng).scale(&rng.random_range(0.0..6.0));
        let u = Unitary::exp_element(&a);
        let image = u.ad(&p_f);
        let on_orbit = if orbit_membership(&image, &flag) {
            0.0
        } else {
            f64::INFINITY
        };
        worst = worst
            .max(in_complement_f64(&s.derived, &image))
            .max(on_orbit);
    }
    checks.push(check(
        "sampled transitivity",
        worst <= CASE_TOL,
        format!("{CASE_SAMPLES} S3 points reached from p and {CASE_SAMPLES} U_H images of p; max residual {worst:.2e}"),
    ));
    let claim_holds = checks.iter().all(|c| c.passed);
    Ok(CaseReport {
        id: "iii".into(),
        flag: "F12".into(),
        orbit_spectrum: qstrings(&[1, 0, -1]),
        flag_dim: flag.flag_dimension(),
        claim: "(u_H')^⊥ meets the maximal flag in S3 = {t=0, |z|^2+|w|^2=1}, a single \
                Lagrangian U_H-orbit of dimension 3"
            .into(),
        claim_holds,
        named_point: vec!["(0,0,i;0,0,0;i,0,0)".into()],
        isotropy_at_named_point: iso,
        intersection: vec!["{t=0, |z|^2+|w|^2=1}".into()],
        checks,
    })
}

/// Runs all three cases. `passed` is true only if every stated claim holds.
pub fn su3_case_study(seed: u64) -> Result<CaseStudyReport> {
    let h = diag_el(&[2, -1, -1]);
    let u_h = centralizer(&h);
    let derived = u_h.derived();
    let complement = derived.space().orthogonal_complement();
    let mut checks = Vec::new();

    let gens = [
        complement_family(qi(1), cq(Q::zero(), Q::zero()), cq(Q::zero(), Q::zero())),
        complement_family(Q::zero(), cq(qi(1), Q::zero()), cq(Q::zero(), Q::zero())),
        complement_family(Q::zero(), cq(Q::zero(), qi(1)), cq(Q::zero(), Q::zero())),
        complement_family(Q::zero(), cq(Q::zero(), Q::zero()), cq(qi(1), Q::zero())),
        complement_family(Q::zero(), cq(Q::zero(), Q::zero()), cq(Q::zero(), qi(1))),
    ];
    let family = Subspace::span(su3(), &gens)?;
    checks.push(check(
        "complement family",
        family.rank() == 5 && family.same_span(&complement),
        "(u_H')^⊥ is the span of X(t,z,w)",
    ));
    checks.push(check(
        "u_H block form",
        u_h.basis().iter().all(|b| {
            let m = b.matrix();
            [(0, 1), (0, 2), (1, 0), (2, 0)]
                .iter()
                .all(|&(i, j)| m.get(i, j).is_zero())
        }),
        "u_H = {diag(it, A) : A ∈ u(2), it + tr A = 0}",
    ));

    let setup = Setup {
        h,
        u_h,
        derived,
        complement,
    };
    let cases = vec![
        case_i(&setup, seed)?,
        case_ii(&setup, seed)?,
        case_iii(&setup, seed)?,
    ];
    let failing_cases: Vec<String> = cases
        .iter()
        .filter(|c| !c.claim_holds)
        .map(|c| c.id.clone())
        .collect();
    let passed = failing_cases.is_empty() && checks.iter().all(|c| c.passed);
    Ok(CaseStudyReport {
        h: qstrings(&[2, -1, -1]),
        centralizer_rank: setup.u_h.rank(),
        derived_rank: setup.derived.rank(),
        complement_rank: setup.complement.rank(),
        checks,
        cases,
        passed,
        failing_cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_and_structure() {
        let r = su3_case_study(11).unwrap();
        assert_eq!(
            (r.centralizer_rank, r.derived_rank, r.complement_rank),
            (4, 3, 5)
        );
        assert!(r.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn cases_i_and_iii_hold_and_ii_is_refuted() {
        let r = su3_case_study(11).unwrap();
        assert!(r.cases[0].claim_holds);
        assert!(r.cases[2].claim_holds);
        assert_eq!(r.cases[2].isotropy_at_named_point.orbit_dim, 3);
        // The orbit through i·diag{1,1,-2} has dimension 2 but is not isotropic;
        // every other check of case (ii) passes.
        let ii = &r.cases[1];
        assert!(!ii.claim_holds);
        assert_eq!(ii.isotropy_at_named_point.orbit_dim, 2);
        assert!(!ii.isotropy_at_named_point.is_isotropic());
        let failing: Vec<&str> = ii
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failing, vec!["stated Lagrangian orbit"]);
        assert_eq!(r.failing_cases, vec!["ii".to_string()]);
    }

    #[test]
    fn orbit_kind_oracle() {
        let cp = diag_el(&[2, -1, -1]).matrix().char_poly();
        assert_eq!(orbit_kind(&cp), OrbitKind::Cp2);
        let cp = diag_el(&[1, 1, -2]).matrix().char_poly();
        assert_eq!(orbit_kind(&cp), OrbitKind::Gr2);
        let cp = diag_el(&[1, 0, -1]).matrix().char_poly();
        assert_eq!(orbit_kind(&cp), OrbitKind::Other);
    }
}
