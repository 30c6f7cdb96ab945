use gwmirror_core::euler_engine::*;
use gwmirror_core::geometry::{build_geometry, GeometrySpec};
use gwmirror_core::series_core::{q, qf, qo, qz, RatFn};

fn quintic() -> (gwmirror_core::Geometry, BundleSpec) {
    let g = build_geometry(&GeometrySpec::projective(4), 11, 3).unwrap();
    let v = BundleSpec::from_h_vectors(&g, &[vec![5]], &[]).unwrap();
    (g, v)
}

#[test]
fn quintic_b1_leading_h_coefficient() {
    let (g, v) = quintic();
    let b = assemble_b(&g, &v, MultClass::Euler, 2).unwrap();
    let e = b.expand(&g, &[1]).unwrap();
    // oracle: 5 * prod_{k=1}^{5}(-k) / (-1)^5
    let oracle: i64 = 5 * (1..=5).map(|k| -k).product::<i64>() / -1;
    assert_eq!(e.coeff(0, 0).coeff(&vec![1]), q(oracle));
    assert_eq!(oracle, 600);
}

#[test]
fn o_d_on_plane_matches_cubed_product() {
    let g = build_geometry(&GeometrySpec::projective_fan(2), 3, 2).unwrap();
    let o = coeff_o_toric(&g, &[2], false).expand(&g.ring).unwrap();
    let h = g.h_class(0);
    let mut direct = LinearForm::new(h.terms().iter().map(|_| qz()).collect(), qz(), qz(), qz());
    direct.gens = g.h_coeffs[0].clone();
    let mut f = FactoredForm::one();
    for k in 1..=2 {
        f.push(LinearForm { alpha: q(-k), ..direct.clone() }, -3);
    }
    assert_eq!(o, f.expand(&g.ring).unwrap());
}

#[test]
fn euler_data_quintic_and_fault() {
    let (g, v) = quintic();
    let r = euler_data_check(&g, &v, MultClass::Euler, 3, false).unwrap();
    assert!(r.passed);
    let r = euler_data_check(&g, &v, MultClass::Euler, 3, true).unwrap();
    assert!(!r.passed);
    assert_eq!(r.first_failure, Some((vec![1], vec![1])));
}

#[test]
fn euler_data_concave_and_chern() {
    let g = build_geometry(&GeometrySpec::projective(1), 2, 3).unwrap();
    let v = BundleSpec::from_h_vectors(&g, &[], &[vec![-1], vec![-1]]).unwrap();
    for b in [MultClass::Euler, MultClass::ChernPoly, MultClass::One] {
        assert!(euler_data_check(&g, &v, b, 3, false).unwrap().passed);
    }
}

#[test]
fn euler_series_checks() {
    let g = build_geometry(&GeometrySpec::projective_fan(2), 3, 2).unwrap();
    let b = assemble_b(&g, &BundleSpec::empty(), MultClass::One, 2).unwrap();
    let a = b.restrict(&g, &qz()).unwrap();
    assert!(euler_series_check(&g, &a, 2, 3).unwrap().passed);

    let g1 = build_geometry(&GeometrySpec::projective(1), 3, 2).unwrap();
    let b1 = assemble_b(&g1, &BundleSpec::empty(), MultClass::One, 2).unwrap();
    let mut a1 = b1.restrict(&g1, &qz()).unwrap();
    assert!(euler_series_check(&g1, &a1, 2, 3).unwrap().passed);
    for row in a1.coeffs.iter_mut() {
        let v = row.get(&vec![1]).unwrap().mul(&RatFn::alpha_pow(-1));
        row.insert(vec![1], v);
    }
    assert!(!euler_series_check(&g1, &a1, 2, 3).unwrap().passed);

    let (gq, v) = quintic();
    let bq = assemble_b(&gq, &v, MultClass::Euler, 3).unwrap();
    let aq = bq.restrict(&gq, &qz()).unwrap();
    assert!(euler_series_check(&gq, &aq, 3, 4).unwrap().passed);
}

#[test]
fn residues_agree() {
    for (spec, conv) in [
        (GeometrySpec::projective(2), vec![]),
        (GeometrySpec::product(&[1, 1]), vec![]),
        (GeometrySpec::projective(4), vec![vec![5]]),
        (GeometrySpec::projective_fan(2), vec![vec![3]]),
    ] {
        let g = build_geometry(&spec, 5, 2).unwrap();
        let v = BundleSpec::from_h_vectors(&g, &conv, &[]).unwrap();
        for cls in [MultClass::One, MultClass::Euler, MultClass::ChernPoly] {
            let b = assemble_b(&g, &v, cls, 2).unwrap();
            let xv = qf(3, 7);
            for (bl, delta) in balloon_multiples(&g, 2) {
                let d: Vec<u32> = bl.degree.iter().map(|x| x * delta).collect();
                let a0 = &bl.weight / q(delta as i64);
                let direct = residue_direct(&g, &b, &d, bl.p, &a0, &xv).unwrap();
                let closed = residue_closed_form(&g, &v, cls, &bl, delta, &xv).unwrap();
                assert_eq!(direct, closed);
                if cls == MultClass::One {
                    assert_ne!(direct, qz());
                }
            }
        }
    }
}

#[test]
fn degree_bounds_of_one() {
    for n in 1..=4 {
        let g = build_geometry(&GeometrySpec::projective(n), 1, 4).unwrap();
        assert!(one_degree_bound_check(&g, 4).unwrap().passed);
    }
    let _ = qo();
}
