use gwmirror_core::euler_engine::{assemble_b, euler_data_check, euler_series_check, BundleSpec, MultClass};
use gwmirror_core::geometry::{build_geometry, monomials_of_degree, CohClass, GeometrySpec};
use gwmirror_core::mirror_transform::equivariant_transform;
use gwmirror_core::series_core::{degree_box, q, qf, qo, qz, NovikovSeries, Poly, RatFn, Q};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

/// Random series in two variables truncated at total degree 3 per variable.
fn series(unit: bool) -> impl Strategy<Value = NovikovSeries<Q>> {
    prop::collection::vec(rat(), 16).prop_map(move |cs| {
        let mut s = NovikovSeries::zero(2, 3, &qo());
        for (d, c) in degree_box(2, 3).into_iter().zip(cs) {
            s.set(d, c);
        }
        if unit {
            s.set(vec![0, 0], qo());
        }
        s
    })
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (prop::collection::vec(rat(), 1..4), prop::collection::vec((-3i64..=3, 1u32..=2), 0..3)).prop_map(|(num, roots)| {
        let roots: Vec<(Q, u32)> = roots.into_iter().map(|(r, k)| (q(r), k)).collect();
        RatFn::from_roots(Poly::from_coeffs(num), &roots)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mul_truncated_commutes_and_associates(a in series(false), b in series(false), c in series(false)) {
        prop_assert_eq!(a.mul_truncated(&b).unwrap(), b.mul_truncated(&a).unwrap());
        let left = a.mul_truncated(&b).unwrap().mul_truncated(&c).unwrap();
        let right = a.mul_truncated(&b.mul_truncated(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn invert_unit_is_two_sided(a in series(true)) {
        let inv = a.invert_unit().unwrap();
        let one = NovikovSeries::one(2, 3, &qo());
        prop_assert_eq!(a.mul_truncated(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.mul_truncated(&a).unwrap(), one);
    }

    #[test]
    fn exp_log_round_trip(a in series(true)) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a);
    }

    #[test]
    fn residue_is_additive(f in ratfn(), g in ratfn(), r in -3i64..=3) {
        let a0 = q(r);
        let (rf, rg) = (f.residue_at(&a0), g.residue_at(&a0));
        prop_assume!(rf.is_ok() && rg.is_ok());
        prop_assert_eq!(f.add(&g).residue_at(&a0).unwrap(), rf.unwrap() + rg.unwrap());
    }

    #[test]
    fn residues_sum_to_minus_residue_at_infinity(f in ratfn()) {
        // the first principal-part coefficient is the residue at any order
        let total: Q = f.denominator_roots().keys().map(|r| f.principal_part(r)[0].clone()).sum();
        prop_assert_eq!(total, f.coeff_at_infinity(-1));
    }

    #[test]
    fn conj_is_an_involution(f in ratfn(), g in ratfn()) {
        prop_assert_eq!(f.conj().conj(), f.clone());
        prop_assert_eq!(f.mul(&g).conj(), f.conj().mul(&g.conj()));
    }

    #[test]
    fn normal_form_is_a_ring_map(seed in 0u64..20, e1 in prop::collection::vec(0u32..4, 3), e2 in prop::collection::vec(0u32..4, 3)) {
        let g = build_geometry(&GeometrySpec::hirzebruch_fan(1), seed, 1).unwrap();
        let n = g.ring.ngens();
        let m1: Vec<u32> = e1.into_iter().cycle().take(n).collect();
        let m2: Vec<u32> = e2.into_iter().cycle().take(n).collect();
        let a = g.normal_form([(m1.clone(), qo())]);
        let b = g.normal_form([(m2.clone(), qo())]);
        let prod: Vec<u32> = m1.iter().zip(&m2).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.mul(&b), g.normal_form([(prod, qo())]));
        prop_assert_eq!(g.normal_form(a.terms().clone()), a);
    }

    #[test]
    fn localization_matches_integration(seed in 0u64..50, which in 0usize..3) {
        let spec = [GeometrySpec::projective(2), GeometrySpec::projective(3), GeometrySpec::product(&[1, 2])][which].clone();
        let g = build_geometry(&spec, seed, 1).unwrap();
        for mono in monomials_of_degree(g.ring.ngens(), g.dim as u32) {
            let c = CohClass::from_raw(&g.ring, [(mono, qo())]);
            prop_assert_eq!(g.localized_integrate(&c).unwrap(), g.integrate(&c));
        }
    }

    #[test]
    fn euler_data_for_random_splittings(l1 in 1i64..=4, l2 in -3i64..=-1, b in 0usize..2) {
        let g = build_geometry(&GeometrySpec::projective(2), 9, 3).unwrap();
        let v = BundleSpec::from_h_vectors(&g, &[vec![l1]], &[vec![l2]]).unwrap();
        let class = [MultClass::Euler, MultClass::ChernPoly][b];
        prop_assert!(euler_data_check(&g, &v, class, 3, false).unwrap().passed);
    }
}

#[test]
fn transformed_series_is_euler_with_clean_mirror_data() {
    let g = build_geometry(&GeometrySpec::projective(2), 6, 2).unwrap();
    let v = BundleSpec::from_h_vectors(&g, &[], &[vec![-3]]).unwrap();
    let em = equivariant_transform(&g, &v, MultClass::Euler, 2, &qz()).unwrap();
    assert!(euler_series_check(&g, &em.a, 2, 3).unwrap().passed);
    assert_eq!(em.mirror.g[0].get(&[0]), qz());
    assert_eq!(em.mirror.f1.get(&[0]), qz());
    assert!(em.mirror.f0.get(&[0]).terms().is_empty());
    let b = assemble_b(&g, &v, MultClass::Euler, 2).unwrap().restrict(&g, &qz()).unwrap();
    assert!(euler_series_check(&g, &b, 2, 3).unwrap().passed);
}
