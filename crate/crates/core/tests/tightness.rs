mod common;

use common::*;
use num_complex::Complex64;
use orbitlab::case_study::k_matrix;
use orbitlab::error::Error;
use orbitlab::group::Unitary;
use orbitlab::lie::LieElement;
use orbitlab::product::ShiftedDiagonal;
use orbitlab::sampling::rng_for;
use orbitlab::tightness::{
    diagonal_pair_transversal, diagonal_tightness_report, local_tightness_probe,
    random_diagonal_pair, s3_admissible, s3_commuting_y, s3_tightness_report, s3_transversal,
    singular_points_on_flag, Reason, SingularPoint,
};
use orbitlab::weyl::{flag_type_of, FlagType};

fn ft(v: &[i64]) -> FlagType {
    flag_type_of(&diag_q(v)).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn singular_points_of_regular_elements() {
    let a = diag_f(&[3.0, 1.0, -4.0]);
    let pts = singular_points_on_flag(&a, &ft(&[1, 0, -1])).unwrap();
    assert_eq!(pts.len(), 6);
    for p in &pts {
        assert!(a.matrix().commutator(p.element().matrix()).frob_norm() <= 1e-9);
    }
    assert_eq!(
        singular_points_on_flag(&a, &ft(&[1, 1, -2])).unwrap().len(),
        3
    );
    let err = singular_points_on_flag(&diag_f(&[2.0, -1.0, -1.0]), &ft(&[1, 0, -1])).unwrap_err();
    assert!(matches!(err, Error::InfiniteSingularities(_)));
}

#[test]
fn transversality_of_diagonal_pairs() {
    let d = ShiftedDiagonal::diagonal(su(3));
    let (y, z) = (diag_f(&[3.0, 1.0, -4.0]), diag_f(&[1.0, -2.0, 1.0]));
    let v = diagonal_pair_transversal(&y, &z, &ft(&[1, 0, -1]), &d).unwrap();
    assert!(v.transversal);
    assert_eq!(v.singular_points.len(), 6);
    assert!(v.max_field_at_singular <= 1e-9);

    let mut rng = rng_for(15, 0);
    let off = orbitlab::sampling::random_element(su(3), &mut rng);
    let v = diagonal_pair_transversal(&off.add(&y).unwrap(), &z, &ft(&[1, 0, -1]), &d).unwrap();
    assert!(!v.transversal);

    let zero = LieElement::zero(su(3));
    let v = diagonal_pair_transversal(&zero, &zero, &ft(&[1, 0, -1]), &d).unwrap();
    assert_eq!(v.reason, Reason::NotRegular);
}

#[test]
fn diagonal_reports_count_weyl_cosets() {
    let mut rng = rng_for(16, 0);
    for (v, n) in [
        (&[1, 0, -1][..], 6),
        (&[1, 1, -2], 3),
        (&[2, -1, -1], 3),
        (&[1, 1, -1, -1], 6),
    ] {
        let a = su(v.len());
        let (y, z) = random_diagonal_pair(a, &mut rng);
        let r = diagonal_tightness_report(&y, &z, &ft(v), &ShiftedDiagonal::diagonal(a)).unwrap();
        assert!(r.tight);
        assert_eq!((r.fixed_points, r.betti_sum), (n, n));
    }
}

#[test]
fn fixed_point_count_is_equivariant() {
    let mut rng = rng_for(17, 0);
    let a = su(3);
    let d = ShiftedDiagonal::new(a, Unitary::haar(3, true, &mut rng)).unwrap();
    let (y, z0) = random_diagonal_pair(a, &mut rng);
    // (Y, Z) with Ad(m⁻¹)Z diagonal
    let z = d.m().ad(&z0);
    for t in [ft(&[1, 0, -1]), ft(&[1, 1, -2])] {
        let base = diagonal_tightness_report(&y, &z, &t, &d)
            .unwrap()
            .fixed_points;
        for _ in 0..5 {
            let (g, h) = d.lift(&Unitary::haar(3, true, &mut rng));
            let moved = diagonal_tightness_report(&g.ad(&y), &h.ad(&z), &t, &d).unwrap();
            assert_eq!(moved.fixed_points, base);
            assert!(moved.verdict.max_field_at_singular <= 1e-9);
        }
    }
}

#[test]
fn s3_examples() {
    let zero = LieElement::zero(su(3));
    let v = s3_transversal([c(1.0, 0.0), c(0.0, 0.0)], &zero).unwrap();
    assert!(v.transversal);
    let pts: Vec<_> = v
        .singular_points
        .iter()
        .map(|p| match p {
            SingularPoint::Flag(x) => x.element().clone(),
            SingularPoint::Product(_) => unreachable!(),
        })
        .collect();
    assert_eq!(pts.len(), 2);
    assert!(pts[0].add(&pts[1]).unwrap().frob_norm() <= 1e-12);

    let y = diag_f(&[0.0, 1.0, -1.0]);
    let v = s3_transversal([c(0.0, 0.0), c(0.0, 0.0)], &y).unwrap();
    assert_eq!(
        (v.transversal, v.reason),
        (false, Reason::TangentNonvanishing)
    );
    let v = s3_transversal([c(1.0, 0.0), c(0.0, 0.0)], &y).unwrap();
    assert!(!v.transversal);

    for (beta, y) in [
        ([c(1.0, 0.0), c(0.0, 0.0)], zero.clone()),
        (
            [c(0.0, 0.0), c(1.0, 0.0)],
            s3_commuting_y([c(0.0, 0.0), c(1.0, 0.0)], 1.0),
        ),
        ([c(0.5f64.sqrt(), 0.0), c(0.5f64.sqrt(), 0.0)], zero),
    ] {
        let r = s3_tightness_report(beta, &y).unwrap();
        assert_eq!((r.fixed_points, r.betti_sum, r.tight), (2, 2, true));
    }
    let mut rng = rng_for(18, 0);
    for _ in 0..100 {
        let (beta, y) = s3_admissible(&mut rng);
        assert!(s3_tightness_report(beta, &y).unwrap().tight);
    }
}

#[test]
fn probe_counts_match_the_infinitesimal_count() {
    let (y, z) = (diag_f(&[3.0, 1.0, -4.0]), diag_f(&[1.0, -2.0, 1.0]));
    let d = ShiftedDiagonal::diagonal(su(3));
    assert_eq!(
        local_tightness_probe(&d, &y, &z, &ft(&[1, 0, -1]), 0.01).unwrap(),
        6
    );
    assert_eq!(
        local_tightness_probe(&d, &y, &z, &ft(&[1, 1, -2]), 0.01).unwrap(),
        3
    );
    assert!(matches!(
        local_tightness_probe(&d, &y, &z, &ft(&[1, 0, -1]), 0.0),
        Err(Error::Domain(_))
    ));
    let k = ShiftedDiagonal::new(su(3), k_matrix()).unwrap();
    let zk = k.m().ad(&z);
    assert_eq!(
        local_tightness_probe(&k, &y, &zk, &ft(&[1, 0, -1]), 0.01).unwrap(),
        6
    );
}
