use gwmirror_core::geometry::{build_geometry, GeometrySpec};
use gwmirror_core::series_core::{q, qo, qz};
use gwmirror_core::Error;

#[test]
fn projective_plane_integrals_agree() {
    let g = build_geometry(&GeometrySpec::projective(2), 7, 3).unwrap();
    let h2 = g.h_class(0).pow(2);
    assert_eq!(g.integrate(&h2), qo());
    assert_eq!(g.localized_integrate(&h2).unwrap(), qo());
    assert_eq!(g.localized_integrate(&g.h_class(0)).unwrap(), qz());
    assert_eq!(g.integrate(&g.c1().pow(2)), q(9));
}

#[test]
fn toric_plane_matches_product_plane() {
    let g = build_geometry(&GeometrySpec::projective_fan(2), 1, 3).unwrap();
    assert_eq!(g.m, 1);
    assert_eq!(g.n_fixed(), 3);
    assert_eq!(g.balloons.len(), 3);
    assert_eq!(g.integrate(&g.h_class(0).pow(2)), qo());
    assert_eq!(g.integrate(&g.c1().pow(2)), q(9));
    assert_eq!(g.pairing(&g.c1(), &[1]).unwrap(), q(3));
}

#[test]
fn hirzebruch_surface_data() {
    for a in 0..3 {
        let g = build_geometry(&GeometrySpec::hirzebruch_fan(a), 5, 2).unwrap();
        assert_eq!(g.m, 2);
        assert_eq!(g.integrate(&g.c1().pow(2)), q(8));
        for b in &g.balloons {
            let rev = b.reversed();
            assert_eq!(g.divisors[rev.divisor_at_p].values[rev.p], rev.weight);
            assert_eq!(g.divisors[b.divisor_at_p].values[b.p], b.weight);
        }
        // H_a dual to the curve basis
        for i in 0..2 {
            for j in 0..2 {
                let mut d = vec![0u32; 2];
                d[j] = 1;
                let v = g.pairing(&g.h_class(i), &d).unwrap();
                assert_eq!(v, if i == j { qo() } else { qz() });
            }
        }
    }
}

#[test]
fn toric_quadric_matches_product() {
    let t = build_geometry(&GeometrySpec::p1xp1_fan(), 2, 2).unwrap();
    let p = build_geometry(&GeometrySpec::product(&[1, 1]), 2, 2).unwrap();
    let hh_t = t.integrate(&t.h_class(0).mul(&t.h_class(1)));
    let hh_p = p.integrate(&p.h_class(0).mul(&p.h_class(1)));
    assert_eq!(hh_t, hh_p);
    assert_eq!(t.integrate(&t.c1().pow(2)), p.integrate(&p.c1().pow(2)));
}

#[test]
fn rejects_incomplete_fan() {
    let spec = GeometrySpec::Toric { rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]], cones: vec![vec![0, 1], vec![1, 2]] };
    assert!(matches!(build_geometry(&spec, 0, 1), Err(Error::InvalidFan(_))));
    let spec = GeometrySpec::Toric { rays: vec![vec![2, 0], vec![0, 1], vec![-1, -1]], cones: vec![vec![0, 1], vec![1, 2], vec![2, 0]] };
    assert!(matches!(build_geometry(&spec, 0, 1), Err(Error::InvalidFan(_))));
}
