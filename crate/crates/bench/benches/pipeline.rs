use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gwmirror_core::mirror_transform::{equivariant_transform, extract_invariants, run_pipeline};
use gwmirror_core::reconstruction::{linking_values_from_splitting, solve_linear_model};
use gwmirror_core::{build_geometry, q, BundleSpec, Geometry, GeometrySpec, MultClass};

fn setup(dims: &[u32], convex: &[Vec<i64>], concave: &[Vec<i64>], dmax: u32) -> (Geometry, BundleSpec) {
    let g = build_geometry(&GeometrySpec::ProjectiveProduct { dims: dims.to_vec() }, 1, dmax).unwrap();
    let v = BundleSpec::from_h_vectors(&g, convex, concave).unwrap();
    (g, v)
}

fn bench_quintic(c: &mut Criterion) {
    let mut group = c.benchmark_group("quintic_compute");
    for dmax in [2u32, 4, 6] {
        let (g, v) = setup(&[4], &[vec![5]], &[], dmax);
        group.bench_with_input(BenchmarkId::from_parameter(dmax), &dmax, |b, &d| {
            b.iter(|| {
                let pl = run_pipeline(&g, &v, MultClass::Euler, d).unwrap();
                extract_invariants(&g, &v, MultClass::Euler, &pl.transformed, d).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("quintic_routes_d2");
    group.sample_size(20);
    let (g, v) = setup(&[4], &[vec![5]], &[], 2);
    group.bench_function("fixed_point", |b| {
        b.iter(|| equivariant_transform(&g, &v, MultClass::Euler, 2, &q(0)).unwrap())
    });
    group.bench_function("linear_model", |b| {
        b.iter(|| {
            let lv = linking_values_from_splitting(&g, &v, MultClass::Euler, 2, &q(0)).unwrap();
            solve_linear_model(&g, &lv, 2).unwrap()
        })
    });
    group.finish();
}

fn bench_product(c: &mut Criterion) {
    let (g, v) = setup(&[1, 1], &[], &[vec![-2, -2]], 2);
    c.bench_function("local_p1xp1_fixed_point_d2", |b| {
        b.iter(|| equivariant_transform(&g, &v, MultClass::Euler, 2, &q(0)).unwrap())
    });
}

criterion_group!(benches, bench_quintic, bench_routes, bench_product);
criterion_main!(benches);
