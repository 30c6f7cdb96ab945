use gwmirror_core::euler_engine::{BundleSpec, LineBundle, MultClass};
use gwmirror_core::geometry::{build_geometry, GeometrySpec};
use gwmirror_core::mirror_transform::{equivariant_transform, extract_equivariant};
use gwmirror_core::reconstruction::*;
use gwmirror_core::series_core::{q, qf, qo};
use gwmirror_core::Error;

#[test]
fn line_count_oracle_is_seed_independent() {
    for seed in [1, 2, 3] {
        assert_eq!(oracle_line_count(4, 5, seed).unwrap(), q(2875));
        assert_eq!(oracle_degree_one_graphs(4, 5, seed).unwrap(), q(2875));
    }
    assert_eq!(oracle_line_count(1, 1, 1).unwrap(), q(0));
    // lines on P^2 meeting the two points cut by a section of O(1): one
    assert_eq!(oracle_line_count(2, 1, 4).unwrap(), qo());
}

#[test]
fn degree_two_graph_sum() {
    for seed in [1, 2] {
        assert_eq!(oracle_degree_two(4, 5, seed).unwrap(), qf(4876875, 8));
    }
}

#[test]
fn quintic_reconstruction_matches_transform() {
    let g = build_geometry(&GeometrySpec::projective(4), 7, 2).unwrap();
    let v = BundleSpec::from_h_vectors(&g, &[vec![5]], &[]).unwrap();
    let lv = linking_values_from_splitting(&g, &v, MultClass::Euler, 2, &q(0)).unwrap();
    let rec = solve_linear_model(&g, &lv, 2).unwrap();
    let em = equivariant_transform(&g, &v, MultClass::Euler, 2, &q(0)).unwrap();
    assert_eq!(rec.series.coeffs, em.a.coeffs);
    assert!(rec.reports.iter().all(|r| r.kernel_dim == 0));
    let t = extract_equivariant(&g, &rec.series).unwrap();
    assert_eq!(t.k[&vec![1]], q(2875));
    assert_eq!(t.k[&vec![2]], qf(4876875, 8));
}

#[test]
fn plane_cubic_chern_reconstruction() {
    let g = build_geometry(&GeometrySpec::projective(2), 3, 2).unwrap();
    let v = BundleSpec::from_h_vectors(&g, &[vec![3]], &[]).unwrap();
    let x = qf(7, 3);
    let lv = linking_values_from_splitting(&g, &v, MultClass::ChernPoly, 2, &x).unwrap();
    let rec = solve_linear_model(&g, &lv, 2).unwrap();
    let em = equivariant_transform(&g, &v, MultClass::ChernPoly, 2, &x).unwrap();
    assert_eq!(rec.series.coeffs, em.a.coeffs);
}

#[test]
fn empty_bundle_reconstructs_one() {
    let g = build_geometry(&GeometrySpec::projective(1), 2, 3).unwrap();
    let lv = linking_values_from_splitting(&g, &BundleSpec::empty(), MultClass::One, 3, &q(0)).unwrap();
    assert!(lv.values.values().all(|x| *x == qo()));
    let rec = solve_linear_model(&g, &lv, 3).unwrap();
    let em = equivariant_transform(&g, &BundleSpec::empty(), MultClass::One, 3, &q(0)).unwrap();
    assert_eq!(rec.series.coeffs, em.a.coeffs);
}

#[test]
fn resolution_of_split_bundle_matches_splitting() {
    let g = build_geometry(&GeometrySpec::projective(1), 2, 3).unwrap();
    let v = BundleSpec::from_h_vectors(&g, &[], &[vec![-1], vec![-1]]).unwrap();
    let a = linking_values_from_splitting(&g, &v, MultClass::Euler, 3, &q(0)).unwrap();
    let b = linking_values_from_resolution(&g, &[ResolutionTerm { sign: 1, bundle: v }], MultClass::Euler, 3, &q(0)).unwrap();
    assert_eq!(a, b);
    // delta = 2 concave factor: (-lambda_p + lambda/2)^2
    let bl = &g.balloons[0];
    let lp = g.restrict_linear(&g.h_coeffs[0], bl.p);
    let w = -lp + &bl.weight / q(2);
    assert_eq!(a.values[&(bl.p, bl.q, 2)], &w * &w);
}

#[test]
fn tangent_bundle_by_euler_sequence() {
    let g = build_geometry(&GeometrySpec::projective(2), 4, 2).unwrap();
    let ones: Vec<LineBundle> = (0..g.divisors.len())
        .map(|k| {
            let mut c = vec![0; g.divisors.len()];
            c[k] = 1;
            LineBundle::from_divisors(&g, &c).unwrap()
        })
        .collect();
    let plus = BundleSpec { convex: ones, concave: vec![] };
    let triv = BundleSpec { convex: vec![LineBundle::from_h_vector(&g, &[0]).unwrap()], concave: vec![] };
    let x = qf(5, 3);
    let terms = [ResolutionTerm { sign: 1, bundle: plus }, ResolutionTerm { sign: -1, bundle: triv.clone() }];
    let lv = linking_values_from_resolution(&g, &terms, MultClass::ChernPoly, 2, &x).unwrap();
    // (1/x) prod_i prod_{k=0}^{d} (x + D_i(p) - k lambda/delta), at delta = d = 1
    for bl in &g.balloons {
        let mut oracle = qo() / &x;
        for dv in &g.divisors {
            for k in 0..=1 {
                oracle *= &x + &dv.values[bl.p] - q(k) * &bl.weight;
            }
        }
        assert_eq!(lv.values[&(bl.p, bl.q, 1)], oracle);
    }
    // Omega is the Chern polynomial of the tangent space at each point
    for (p, fp) in g.fixed_points.iter().enumerate() {
        let want = fp.tangent.iter().fold(qo(), |a, w| a * (&x + w));
        assert_eq!(lv.omega[p], want);
    }
    let rec = solve_linear_model(&g, &lv, 2).unwrap();
    assert!(rec.reports.iter().all(|r| r.kernel_dim == 0));
    let bad = [ResolutionTerm { sign: -1, bundle: triv }];
    assert!(matches!(
        linking_values_from_resolution(&g, &bad, MultClass::ChernPoly, 2, &x),
        Err(Error::NegativeMultiplicity(_))
    ));
    assert_eq!(lv.values.len(), 2 * g.balloons.len() * 2);
}

#[test]
fn too_few_constraints_are_underdetermined() {
    let g = build_geometry(&GeometrySpec::projective(4), 7, 2).unwrap();
    let v = BundleSpec::from_h_vectors(&g, &[vec![5]], &[]).unwrap();
    let lv = linking_values_from_splitting(&g, &v, MultClass::Euler, 2, &q(0)).unwrap();
    // residue rows alone leave the polynomial part of A_1 free
    let err = solve_linear_model_capped(&g, &lv, 2, Some(0)).unwrap_err();
    assert!(matches!(err, Error::Underdetermined(..)), "{err:?}");
    assert!(solve_linear_model_capped(&g, &lv, 2, Some(5)).is_ok());
}
