mod common;

use common::*;
use orbitlab::case_study::k_matrix;
use orbitlab::group::Unitary;
use orbitlab::lie::{centralizer, AlgebraDescriptor, LieElement};
use orbitlab::orbit::{
    kks_form, moment_map_check, nondegeneracy_check, orbit_membership, orbit_tangent_rank,
    phi_equivariance_check, OrbitPoint,
};
use orbitlab::sampling::{random_element, random_in, rng_for};
use orbitlab::scalar::Q;

#[test]
fn membership_examples() {
    let a = su(3);
    let antisym = exact(
        a,
        &[
            &[(0, 0), (1, 0), (0, 0)],
            &[(-1, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (0, 0)],
        ],
    );
    assert!(orbit_membership(&antisym, &orbit(&[1, 0, -1])));
    assert!(!orbit_membership(&h_su3(), &orbit(&[1, 1, -2])));
    let x = base_f(&[3, 1, -4]).element().clone();
    assert!(orbit_membership(&x, &orbit(&[3, 1, -4])));
}

#[test]
fn kks_examples() {
    let mut rng = rng_for(5, 0);
    let x = base_f(&[1, 0, -1]).moved(&Unitary::haar(3, true, &mut rng));
    let a = random_element(su(3), &mut rng);
    assert_eq!(kks_form(&x, &a, &a).unwrap(), 0.0);

    // at a regular diagonal point the torus fields vanish
    let p = base_f(&[3, 1, -4]);
    let t = centralizer(p.element());
    let (y, z) = (
        random_in(t.space(), &mut rng),
        random_in(t.space(), &mut rng),
    );
    assert!(kks_form(&p, &y, &z).unwrap().abs() <= 1e-12);

    // independent entrywise oracle: 2n tr(x [X, Y])
    for _ in 0..20 {
        let y = random_element(su(3), &mut rng);
        let z = random_element(su(3), &mut rng);
        let c = y.matrix().commutator(z.matrix());
        let mut tr = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                tr += (x.element().matrix().get(i, j) * c.get(j, i)).re;
            }
        }
        assert!((kks_form(&x, &y, &z).unwrap() - 6.0 * tr).abs() <= 1e-10);
    }
}

#[test]
fn tangent_ranks_of_centralizer_orbits() {
    let uh = centralizer(&h_su3());
    let gr2 = OrbitPoint::<Q>::at_diagonal(&diag_q(&[1, 1, -2])).unwrap();
    assert_eq!(orbit_tangent_rank(&gr2, &uh).unwrap(), 2);
    let a = su(3);
    let s3 = exact(
        a,
        &[
            &[(0, 0), (0, 0), (0, 1)],
            &[(0, 0), (0, 0), (0, 0)],
            &[(0, 1), (0, 0), (0, 0)],
        ],
    );
    let p = OrbitPoint::new(orbit(&[1, 0, -1]), s3).unwrap();
    assert_eq!(orbit_tangent_rank(&p, &uh).unwrap(), 3);
    let own = OrbitPoint::<Q>::at_diagonal(&h_su3()).unwrap();
    assert_eq!(orbit_tangent_rank(&own, &uh).unwrap(), 0);
}

#[test]
fn moment_map_identity() {
    let mut rng = rng_for(6, 0);
    for n in [2, 3] {
        for _ in 0..20 {
            let x = base_f(if n == 2 { &[1, -1] } else { &[3, 1, -4] })
                .moved(&Unitary::haar(n, true, &mut rng));
            let y = random_element(su(n), &mut rng);
            let z = random_element(su(n), &mut rng);
            assert!(moment_map_check(&x, &y, &z, 1e-4).unwrap() <= 1e-6);
        }
    }
    let x = base_f(&[3, 1, -4]);
    let z = random_in(centralizer(x.element()).space(), &mut rng);
    let y = random_element(su(3), &mut rng);
    assert!(moment_map_check(&x, &y, &z, 1e-4).unwrap() <= 1e-9);
}

#[test]
fn equivariance() {
    let x = diag_f(&[1.0, 0.0, -1.0]);
    assert_eq!(
        phi_equivariance_check(Unitary::identity(3).matrix(), &x, &x).unwrap(),
        0.0
    );
    assert!(phi_equivariance_check(k_matrix().matrix(), &x, &x).unwrap() <= 1e-10);
    let mut rng = rng_for(7, 0);
    for _ in 0..20 {
        let g = Unitary::exp_element(&random_element(su(3), &mut rng).scale(&2.0));
        let y = random_element(su(3), &mut rng);
        let z = random_element(su(3), &mut rng);
        assert!(phi_equivariance_check(g.matrix(), &y, &z).unwrap() <= 1e-8);
    }
}

#[test]
fn nondegeneracy_ranks() {
    let rank = |v: &[i64]| {
        nondegeneracy_check(&OrbitPoint::<Q>::at_diagonal(&diag_q(v)).unwrap()).unwrap()
    };
    assert_eq!(rank(&[1, 0, -1]), 6);
    assert_eq!(rank(&[1, 1, -2]), 4);
    assert_eq!(rank(&[1, -1]), 2);
    let u2 = LieElement::i_diag(AlgebraDescriptor::u(2), &[2.0, 1.0]).unwrap();
    let o = orbitlab::orbit::AdjointOrbit::new(
        AlgebraDescriptor::u(2),
        &[orbitlab::scalar::qi(2), orbitlab::scalar::qi(1)],
    )
    .unwrap();
    assert_eq!(
        nondegeneracy_check(&OrbitPoint::new(o, u2).unwrap()).unwrap(),
        2
    );
}
