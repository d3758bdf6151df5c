mod common;

use common::*;
use num_complex::Complex;
use num_traits::Zero;
use orbitlab::case_study::complement_family;
use orbitlab::isotropy::weyl_basis_subalgebra;
use orbitlab::lie::{
    bracket, center, centralizer, derived_subalgebra, is_regular, killing_form,
    orthogonal_complement, scalar_product, AlgebraDescriptor, LieElement, Subalgebra, Subspace,
};
use orbitlab::sampling::{random_element, rng_for};
use orbitlab::scalar::{q, qi, Q};

#[test]
fn bracket_with_itself_vanishes() {
    let mut rng = rng_for(1, 0);
    for n in 2..=4 {
        let x = random_element(su(n), &mut rng);
        assert!(bracket(&x, &x).unwrap().is_zero());
    }
}

#[test]
fn su2_generator_bracket() {
    let a = su(2);
    let x = exact(a, &[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]);
    let y = exact(a, &[&[(0, 0), (0, 1)], &[(0, 1), (0, 0)]]);
    let expected = exact(a, &[&[(0, 2), (0, 0)], &[(0, 0), (0, -2)]]);
    assert_eq!(bracket(&x, &y).unwrap(), expected);
}

#[test]
fn killing_is_negative_definite_and_matches_trace() {
    let mut rng = rng_for(2, 0);
    for k in 0..100 {
        let n = 2 + k % 4;
        let x = random_element(su(n), &mut rng);
        let y = random_element(su(n), &mut rng);
        assert!(killing_form(&x, &x).unwrap() < 0.0);
        let closed = 2.0 * n as f64 * x.matrix().re_trace_product(y.matrix());
        let b = killing_form(&x, &y).unwrap();
        assert!((b - closed).abs() <= 1e-9 * x.frob_norm() * y.frob_norm());
    }
}

#[test]
fn su2_diagonal_killing_is_minus_eight() {
    let x = diag_q(&[1, -1]);
    assert_eq!(killing_form(&x, &x).unwrap(), qi(-8));
}

#[test]
fn derived_subalgebras() {
    assert_eq!(derived_subalgebra(&Subalgebra::<Q>::torus(su(4))).rank(), 0);
    assert_eq!(derived_subalgebra(&centralizer(&h_su3())).rank(), 3);
    let so3 = weyl_basis_subalgebra::<Q>(su(3)).unwrap();
    let d = derived_subalgebra(&so3);
    assert_eq!(d.rank(), 3);
    assert!(d.space().same_span(so3.space()));
}

#[test]
fn complement_of_derived_centralizer_is_the_five_parameter_family() {
    let comp = orthogonal_complement(derived_subalgebra(&centralizer(&h_su3())).space());
    assert_eq!(comp.rank(), 5);
    let c = |re: i64, im: i64| Complex::new(qi(re), qi(im));
    let family: Vec<LieElement<Q>> = [
        (q(1, 1), c(0, 0), c(0, 0)),
        (q(0, 1), c(1, 0), c(0, 0)),
        (q(0, 1), c(0, 1), c(0, 0)),
        (q(0, 1), c(0, 0), c(1, 0)),
        (q(0, 1), c(0, 0), c(0, 1)),
        (q(-3, 2), c(2, -1), c(-1, 5)),
    ]
    .into_iter()
    .map(|(t, z, w)| complement_family(t, z, w))
    .collect();
    for x in &family {
        assert!(comp.contains(x));
    }
    assert!(Subspace::span(su(3), &family[..5])
        .unwrap()
        .same_span(&comp));
    // entries of X(t, z, w): (1,1) = 2it, (2,2) = (3,3) = -it, (2,3) = 0
    let x = &family[5];
    assert_eq!(x.matrix().get(0, 0).im, qi(-3));
    assert_eq!(x.matrix().get(1, 1).im, q(3, 2));
    assert!(x.matrix().get(1, 2).re.is_zero() && x.matrix().get(1, 2).im.is_zero());
}

#[test]
fn complement_of_whole_is_zero() {
    assert_eq!(
        orthogonal_complement(&Subspace::<Q>::whole(su(3))).rank(),
        0
    );
}

/// `su(2) ⊕ su(2)` embedded block-diagonally in su(4).
fn block(x: &LieElement<Q>, y: &LieElement<Q>) -> LieElement<Q> {
    let a = su(4);
    let m = orbitlab::matrix::CMat::from_fn(4, |i, j| match (i < 2, j < 2) {
        (true, true) => x.matrix().get(i, j).clone(),
        (false, false) => y.matrix().get(i - 2, j - 2).clone(),
        _ => Complex::new(Q::zero(), Q::zero()),
    });
    LieElement::new(a, m).unwrap()
}

#[test]
fn diagonal_complement_in_a_sum_is_the_antidiagonal() {
    let b2 = su(2).basis::<Q>();
    let diag: Vec<_> = b2.iter().map(|x| block(x, x)).collect();
    let anti: Vec<_> = b2.iter().map(|x| block(x, &x.neg())).collect();
    let sum: Vec<_> = b2
        .iter()
        .flat_map(|x| {
            [
                block(x, &LieElement::zero(su(2))),
                block(&LieElement::zero(su(2)), x),
            ]
        })
        .collect();
    let comp = orthogonal_complement(&Subspace::span(su(4), &diag).unwrap());
    for y in &anti {
        assert!(comp.contains(y));
    }
    // dim(comp ∩ sum) = dim comp + dim sum - dim(comp + sum)
    let joined: Vec<_> = comp.basis().iter().chain(sum.iter()).cloned().collect();
    let inter = comp.rank() + 6 - Subspace::span(su(4), &joined).unwrap().rank();
    assert_eq!(inter, 3);
}

#[test]
fn centers() {
    assert_eq!(center::<Q>(su(3)).rank(), 0);
    let z = center::<Q>(AlgebraDescriptor::u(3));
    assert_eq!(z.rank(), 1);
    let ii = LieElement::i_diag(AlgebraDescriptor::u(3), &[qi(1), qi(1), qi(1)]).unwrap();
    assert!(z.contains(&ii));
    assert_eq!(center::<Q>(AlgebraDescriptor::so(3)).rank(), 0);
}

#[test]
fn centralizers() {
    let reg = diag_q(&[3, 1, -4]);
    let c = centralizer(&reg);
    assert_eq!(c.rank(), 2);
    assert!(c.space().same_span(Subalgebra::<Q>::torus(su(3)).space()));

    let c = centralizer(&h_su3());
    assert_eq!(c.rank(), 4);
    for x in c.basis() {
        for (i, j) in [(0, 1), (0, 2), (1, 0), (2, 0)] {
            let z = x.matrix().get(i, j);
            assert!(z.re.is_zero() && z.im.is_zero());
        }
    }
    assert_eq!(centralizer(&LieElement::<Q>::zero(su(3))).rank(), 8);
}

#[test]
fn regularity_examples() {
    let a = su(3);
    let antisym = exact(
        a,
        &[
            &[(0, 0), (1, 0), (0, 0)],
            &[(-1, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (0, 0)],
        ],
    );
    assert!(is_regular(&antisym).unwrap());
    assert!(is_regular(&antisym.to_f64()).unwrap());
    assert!(!is_regular(&h_su3()).unwrap());
    assert!(!is_regular(&LieElement::<Q>::zero(a)).unwrap());
}

#[test]
fn scalar_product_on_u_n_is_nondegenerate_on_the_center() {
    let ii = LieElement::i_diag(AlgebraDescriptor::u(2), &[1.0, 1.0]).unwrap();
    assert!(scalar_product(&ii, &ii).unwrap() < 0.0);
}
