use gwmirror_core::euler_engine::{BundleSpec, MultClass};
use gwmirror_core::geometry::{build_geometry, GeometrySpec};
use gwmirror_core::mirror_transform::*;
use gwmirror_core::series_core::{q, qf, qo, XPoly, Q};
use gwmirror_core::{Error, Geometry};

fn setup(spec: GeometrySpec, convex: &[Vec<i64>], concave: &[Vec<i64>], dmax: u32) -> (Geometry, BundleSpec) {
    let g = build_geometry(&spec, 5, dmax).unwrap();
    let v = BundleSpec::from_h_vectors(&g, convex, concave).unwrap();
    (g, v)
}

fn fact(n: u128) -> u128 {
    (1..=n).product()
}

#[test]
fn quintic_mirror_map() {
    let (g, v) = setup(GeometrySpec::projective(4), &[vec![5]], &[], 4);
    let md = mirror_fg(&asymptotics(&g, &cofactors(&g, &v, MultClass::Euler, 4).unwrap()).unwrap()).unwrap();
    for d in 1..=4u32 {
        let oracle = fact(5 * d as u128) / fact(d as u128).pow(5);
        assert_eq!(md.c.get(&[d]), Q::from_integer(oracle.into()), "C at d = {d}");
        assert_eq!(md.c_prime.get(&[d]), XPoly::zero());
    }
    // 120 * (5 (1 + 1/2 + ... + 1/5) - 5) by hand
    let oracle = q(120) * (q(5) * (qo() + qf(1, 2) + qf(1, 3) + qf(1, 4) + qf(1, 5)) - q(5));
    assert_eq!(oracle, q(770));
    assert_eq!(md.g[0].get(&[1]), oracle);
    assert!(md.f1.get(&[0]) == q(0) && md.g[0].get(&[0]) == q(0));
}

#[test]
fn quintic_invariants() {
    let (g, v) = setup(GeometrySpec::projective(4), &[vec![5]], &[], 3);
    let pl = run_pipeline(&g, &v, MultClass::Euler, 3).unwrap();
    let t = extract_invariants(&g, &v, MultClass::Euler, &pl.transformed, 3).unwrap();
    assert_eq!(t.k[&vec![1]], q(2875));
    assert_eq!(t.k[&vec![2]], qf(4876875, 8));
    assert_eq!(t.k[&vec![3]], qf(8564575000, 27));
    assert!(t.residuals.values().all(|r| *r == q(0)));
}

#[test]
fn inverse_mirror_map_composes_to_identity() {
    let (g, v) = setup(GeometrySpec::projective(4), &[vec![5]], &[], 3);
    let pl = run_pipeline(&g, &v, MultClass::Euler, 3).unwrap();
    let qq = &pl.transformed.inverse_map[0];
    let g0 = &pl.mirror.g[0];
    // Q(q(Q)) = Q
    let back = qq.mul_truncated(&g0.substitute(&pl.transformed.inverse_map).unwrap().exp().unwrap()).unwrap();
    assert_eq!(back.get(&[1]), qo());
    assert_eq!(back.get(&[2]), q(0));
    assert_eq!(back.get(&[3]), q(0));
}

#[test]
fn local_curve_multiple_covers() {
    let (g, v) = setup(GeometrySpec::projective(1), &[], &[vec![-1], vec![-1]], 4);
    let pl = run_pipeline(&g, &v, MultClass::Euler, 4).unwrap();
    let t = extract_invariants(&g, &v, MultClass::Euler, &pl.transformed, 4).unwrap();
    for d in 1..=4i64 {
        assert_eq!(t.k[&vec![d as u32]], qf(1, d * d * d));
    }
}

#[test]
fn local_plane() {
    let (g, v) = setup(GeometrySpec::projective(2), &[], &[vec![-3]], 3);
    let pl = run_pipeline(&g, &v, MultClass::Euler, 3).unwrap();
    let t = extract_invariants(&g, &v, MultClass::Euler, &pl.transformed, 3).unwrap();
    assert_eq!(t.k[&vec![1]], q(3));
    assert_eq!(t.k[&vec![2]], qf(-45, 8));
    assert_eq!(t.k[&vec![3]], qf(244, 9));
}

#[test]
fn empty_bundle_on_line_is_already_normalized() {
    let g = build_geometry(&GeometrySpec::projective(1), 5, 3).unwrap();
    let v = BundleSpec::empty();
    let cof = cofactors(&g, &v, MultClass::One, 3).unwrap();
    let md = mirror_fg(&asymptotics(&g, &cof).unwrap()).unwrap();
    assert!(md.c.get(&[1]) == q(0) && md.g[0].is_zero() && md.f1.is_zero() && md.f0.is_zero());
    let tr = transform_apply(&g, &v, MultClass::One, &cof, &md).unwrap();
    for d in 1..=3u32 {
        assert_eq!(tr.coeffs[&vec![d]], cof.coeffs[&vec![d]]);
    }
    assert!(matches!(dimension_shift(&g, &v, MultClass::One, 3), Err(Error::DimensionBalance(_))));
}

#[test]
fn equivariant_route_matches_expansion() {
    let (g, v) = setup(GeometrySpec::projective(4), &[vec![5]], &[], 3);
    let pl = run_pipeline(&g, &v, MultClass::Euler, 3).unwrap();
    let em = equivariant_transform(&g, &v, MultClass::Euler, 3, &q(0)).unwrap();
    assert_eq!(em.mirror.g, pl.mirror.g);
    assert_eq!(em.mirror.c, pl.mirror.c);
    let t = extract_equivariant(&g, &em.a).unwrap();
    let t2 = extract_invariants(&g, &v, MultClass::Euler, &pl.transformed, 3).unwrap();
    assert_eq!(t.k, t2.k);
}

#[test]
fn product_equivariant_route_matches_expansion() {
    let (g, v) = setup(GeometrySpec::product(&[1, 1]), &[], &[vec![-2, -2]], 2);
    let pl = run_pipeline(&g, &v, MultClass::Euler, 2);
    let em = equivariant_transform(&g, &v, MultClass::Euler, 2, &q(0)).unwrap();
    let t = extract_equivariant(&g, &em.a).unwrap();
    // concave data on a product has no nonequivariant route
    assert!(matches!(pl, Err(Error::Unsupported(_))));
    assert_eq!(t.k[&vec![1, 0]], q(-2));
    assert_eq!(t.k[&vec![0, 1]], q(-2));
}

#[test]
fn chern_shift_routes_agree() {
    let (g, v) = setup(GeometrySpec::projective(2), &[vec![3]], &[], 2);
    let s = dimension_shift(&g, &v, MultClass::ChernPoly, 2).unwrap();
    assert_eq!(s, 2);
    let pl = run_pipeline(&g, &v, MultClass::ChernPoly, 2).unwrap();
    let ta = extract_invariants_shifted(&g, &pl.transformed, s, 2).unwrap();
    let den = x_denominator(&vec![vec![]; g.n_fixed()]);
    let tb = extract_equivariant_interpolated(&g, s, &den, 2, |x| {
        Ok(equivariant_transform(&g, &v, MultClass::ChernPoly, 2, x)?.a)
    })
    .unwrap();
    assert_eq!(ta.k, tb.k);
    assert!(ta.k.values().all(|k| *k != q(0)));
}

#[test]
fn shift_must_be_constant() {
    let (g, v) = setup(GeometrySpec::projective(3), &[vec![1], vec![1]], &[], 3);
    assert!(matches!(dimension_shift(&g, &v, MultClass::ChernPoly, 3), Err(Error::ShiftNotConstant(_))));
}

#[test]
fn omega_classes() {
    let (g, v) = setup(GeometrySpec::projective(4), &[vec![5]], &[], 1);
    let om = omega_class(&g, &v, MultClass::Euler).unwrap();
    assert_eq!(om.coeff(0, 0), g.h_class(0).scale(&q(5)));
    let e = omega_class(&g, &BundleSpec::empty(), MultClass::ChernPoly).unwrap();
    assert_eq!(e.coeff(0, 0).scalar_part(), qo());
}
