mod common;

use common::*;
use orbitlab::group::Unitary;
use orbitlab::isotropy::{
    check_isotropic, cotangent_isotropy, weyl_basis_subalgebra, Action, CotangentPoint,
};
use orbitlab::lie::{
    centralizer, derived_subalgebra, killing_form, orthogonal_complement, AlgebraDescriptor,
    LieElement, Subalgebra, Subspace,
};
use orbitlab::orbit::{kks_form, nondegeneracy_check, orbit_membership_tol, OrbitPoint};
use orbitlab::par::Exec;
use orbitlab::product::{
    dual_check, isotopy_path, product_kks_check, shifted_lagrangian_point, ShiftedDiagonal,
};
use orbitlab::sampling::{random_element, random_in, rng_for};
use orbitlab::scalar::{qi, Q};
use orbitlab::tightness::{diagonal_tightness_report, random_diagonal_pair};
use orbitlab::weyl::{dual_involution, flag_dimension, flag_type_of};
use proptest::prelude::*;

fn exact_element(n: usize, coords: &[i64]) -> LieElement<Q> {
    let a = su(n);
    let c: Vec<Q> = coords
        .iter()
        .take(a.real_dimension())
        .map(|&v| qi(v))
        .collect();
    a.from_coords(&c)
}

/// Trace-zero integer spectrum scaled by n so it stays integral.
fn spectrum_strategy() -> impl Strategy<Value = Vec<i64>> {
    (2usize..=4)
        .prop_flat_map(|n| prop::collection::vec(-3i64..=3, n))
        .prop_map(|v| {
            let n = v.len() as i64;
            let s: i64 = v.iter().sum();
            v.iter().map(|x| x * n - s).collect()
        })
}

fn nonzero_spectrum() -> impl Strategy<Value = Vec<i64>> {
    spectrum_strategy().prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn jacobi_exact(n in 2usize..=3, c in prop::collection::vec(-3i64..=3, 24)) {
        let (x, y, z) = (exact_element(n, &c[0..8]), exact_element(n, &c[8..16]), exact_element(n, &c[16..24]));
        let s = x.bracket(&y).unwrap().bracket(&z).unwrap()
            .add(&y.bracket(&z).unwrap().bracket(&x).unwrap()).unwrap()
            .add(&z.bracket(&x).unwrap().bracket(&y).unwrap()).unwrap();
        prop_assert!(s.is_zero());
    }

    #[test]
    fn jacobi_float(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let (x, y, z) = (random_element(su(n), &mut rng), random_element(su(n), &mut rng), random_element(su(n), &mut rng));
        let s = x.bracket(&y).unwrap().bracket(&z).unwrap()
            .add(&y.bracket(&z).unwrap().bracket(&x).unwrap()).unwrap()
            .add(&z.bracket(&x).unwrap().bracket(&y).unwrap()).unwrap();
        prop_assert!(s.frob_norm() <= 1e-9);
    }

    #[test]
    fn killing_invariance_and_closed_form(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let (x, y, z) = (random_element(su(n), &mut rng), random_element(su(n), &mut rng), random_element(su(n), &mut rng));
        let lhs = killing_form(&z.bracket(&x).unwrap(), &y).unwrap();
        let rhs = -killing_form(&x, &z.bracket(&y).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9);
        let closed = 2.0 * n as f64 * x.matrix().re_trace_product(y.matrix());
        prop_assert!((killing_form(&x, &y).unwrap() - closed).abs() <= 1e-9);
    }

    #[test]
    fn complement_is_an_involution(c in prop::collection::vec(-2i64..=2, 24), k in 0usize..=3) {
        let elems: Vec<_> = (0..k).map(|j| exact_element(3, &c[8 * j..8 * j + 8])).collect();
        let s = Subspace::span(su(3), &elems).unwrap();
        let back = orthogonal_complement(&orthogonal_complement(&s));
        prop_assert!(back.same_span(&s));
        prop_assert_eq!(orthogonal_complement(&s).rank() + s.rank(), 8);
    }

    #[test]
    fn derived_is_contained(v in nonzero_spectrum()) {
        let l = centralizer(&diag_q(&v));
        let d = derived_subalgebra(&l);
        prop_assert!(l.space().contains_subspace(d.space()));
        let so = weyl_basis_subalgebra::<Q>(su(v.len())).unwrap();
        prop_assert!(derived_subalgebra(&so).space().same_span(so.space()) || v.len() == 2);
    }

    #[test]
    fn membership_is_conjugation_invariant(v in nonzero_spectrum(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let x = base_f(&v);
        let o = orbit(&v);
        for _ in 0..5 {
            let g = Unitary::haar(v.len(), true, &mut rng);
            prop_assert!(orbit_membership_tol(x.moved(&g).element(), &o, 1e-8));
        }
    }

    #[test]
    fn kks_is_antisymmetric_and_sees_only_the_tangent(v in nonzero_spectrum(), c in prop::collection::vec(-3i64..=3, 30), seed in any::<u64>()) {
        let n = v.len();
        let d = su(n).real_dimension();
        let p = OrbitPoint::<Q>::at_diagonal(&diag_q(&v)).unwrap();
        let (a, b) = (exact_element(n, &c[..d]), exact_element(n, &c[15..15 + d]));
        prop_assert_eq!(kks_form(&p, &a, &b).unwrap(), -kks_form(&p, &b, &a).unwrap());

        let mut rng = rng_for(seed, 0);
        let x = base_f(&v).moved(&Unitary::haar(n, true, &mut rng));
        let cz = centralizer(x.element());
        let (a, b) = (random_element(su(n), &mut rng), random_element(su(n), &mut rng));
        let shifted = a.add(&random_in(cz.space(), &mut rng)).unwrap();
        prop_assert!((kks_form(&x, &a, &b).unwrap() - kks_form(&x, &shifted, &b).unwrap()).abs() <= 1e-10 * (1.0 + x.element().frob_norm()));
    }

    #[test]
    fn nondegeneracy_rank_is_the_flag_dimension(v in nonzero_spectrum(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let x = base_f(&v).moved(&Unitary::haar(v.len(), true, &mut rng));
        prop_assert_eq!(nondegeneracy_check(&x).unwrap(), x.orbit().flag_dimension());
    }

    #[test]
    fn reports_are_internally_consistent(v in nonzero_spectrum(), w in nonzero_spectrum(), kind in 0usize..3, seed in any::<u64>()) {
        let n = v.len();
        let a = su(n);
        let l: Subalgebra<f64> = match kind {
            0 => Subalgebra::torus(a),
            1 => weyl_basis_subalgebra(a).unwrap(),
            _ => {
                let h: Vec<f64> = w.iter().cycle().take(n).map(|&x| x as f64).collect();
                let mean = h.iter().sum::<f64>() / n as f64;
                centralizer(&diag_f(&h.iter().map(|x| x - mean).collect::<Vec<_>>()))
            }
        };
        let mut rng = rng_for(seed, 0);
        let x = base_f(&v).moved(&Unitary::haar(n, true, &mut rng));
        let r = check_isotropic(&l, &x, seed).unwrap();
        prop_assert!(r.consistent());
        if r.lagrangian {
            prop_assert!(r.is_isotropic() && 2 * r.orbit_dim == r.flag_dim);
        }
    }

    #[test]
    fn semisimple_cotangent_orbits(n in 2usize..=4, scale in prop_oneof![Just(0.0), 0.1f64..3.0], seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let alpha = random_element(su(n), &mut rng).scale(&scale);
        let p = CotangentPoint::new(Unitary::haar(n, true, &mut rng), alpha).unwrap();
        for action in [Action::Left, Action::Right] {
            prop_assert_eq!(cotangent_isotropy(&p, action).unwrap().is_isotropic(), scale == 0.0);
        }
    }

    #[test]
    fn dual_check_is_symmetric_and_matches_flag_types(v in spectrum_strategy(), w in spectrum_strategy()) {
        prop_assume!(v.len() == w.len());
        let (h1, h2) = (diag_q(&v), diag_q(&w));
        let ab = dual_check(&h1, &h2).unwrap();
        prop_assert_eq!(ab.dual, dual_check(&h2, &h1).unwrap().dual);
        let composed = dual_involution(&flag_type_of(&h1).unwrap()) == flag_type_of(&h2).unwrap();
        prop_assert_eq!(ab.dual, composed);
    }

    #[test]
    fn graphs_are_lagrangian_and_isotopies_keep_spectra(v in nonzero_spectrum(), seed in any::<u64>(), t in 0.0f64..=1.0) {
        let n = v.len();
        let mut rng = rng_for(seed, 0);
        let m1 = Unitary::haar(n, true, &mut rng);
        let m2 = Unitary::haar(n, true, &mut rng);
        let d = ShiftedDiagonal::new(su(n), m1.clone()).unwrap();
        let p = shifted_lagrangian_point(&d, &Unitary::haar(n, true, &mut rng), &diag_q(&v)).unwrap();
        let r = product_kks_check(&p, &d, 10, seed, Exec::Sequential).unwrap();
        prop_assert!(r.max_residual <= 1e-8 && r.tangent_rank == flag_dimension(&p.left.orbit().flag_type()));
        let q = isotopy_path(&m1, &m2, t, &p).unwrap().point;
        prop_assert!(orbit_membership_tol(q.left.element(), q.left.orbit(), 1e-8));
        prop_assert!(orbit_membership_tol(q.right.element(), q.right.orbit(), 1e-8));
    }

    #[test]
    fn diagonal_pairs_are_tight(v in nonzero_spectrum(), extra in 0usize..=1, seed in any::<u64>()) {
        // widen to n = 5 now and then
        let v: Vec<i64> = if extra == 1 && v.len() == 4 {
            let mut w = v.clone();
            w.push(0);
            w.iter().map(|x| 5 * x - w.iter().sum::<i64>()).collect()
        } else {
            v
        };
        let a = AlgebraDescriptor::su(v.len());
        let mut rng = rng_for(seed, 0);
        let (y, z) = random_diagonal_pair(a, &mut rng);
        let ft = flag_type_of(&diag_q(&v)).unwrap();
        let r = diagonal_tightness_report(&y, &z, &ft, &ShiftedDiagonal::diagonal(a)).unwrap();
        prop_assert!(r.tight);
        prop_assert!(r.verdict.max_field_at_singular <= 1e-9);
    }
}
