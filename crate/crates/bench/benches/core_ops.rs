use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use su2geo::fields::{right_invariant_field, FrameField};
use su2geo::foliation::is_metric_foliation;
use su2geo::geodesic::{
    berger_geodesic, integrate_geodesic, BergerGeodesicSpec, GeodesicState, IntegratorConfig,
};
use su2geo::group::{alg_exp, AlgebraVector, FdConfig, GroupPoint};
use su2geo::milnor::{christoffel, FrameVec, MilnorTriple};
use su2geo::sample::random_points_where;
use su2geo::scalar::rat;

fn bench_christoffel(c: &mut Criterion) {
    let rational = MilnorTriple::new_rational(rat(7, 3), rat(1, 5), rat(9, 4)).unwrap();
    let float = rational.to_f64();
    c.bench_function("christoffel_rational", |b| {
        b.iter(|| christoffel(black_box(&rational)))
    });
    c.bench_function("christoffel_f64", |b| {
        b.iter(|| christoffel(black_box(&float)))
    });
}

fn bench_group_ops(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = alg_exp(&AlgebraVector::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ));
    let h = alg_exp(&AlgebraVector::new(0.3, -0.8, 0.5));
    c.bench_function("group_mul", |b| b.iter(|| black_box(&g).mul(black_box(&h))));
    let a = AlgebraVector::new(0.4, -0.2, 0.9);
    c.bench_function("alg_exp", |b| b.iter(|| alg_exp(black_box(&a))));
}

fn bench_geodesics(c: &mut Criterion) {
    let spec = BergerGeodesicSpec::new(0.5, 1.1).unwrap();
    c.bench_function("berger_closed_form", |b| {
        b.iter(|| berger_geodesic(black_box(&spec), black_box(2.7)))
    });

    let m = spec.milnor_triple();
    let s0 = GeodesicState::new(GroupPoint::IDENTITY, spec.initial_velocity());
    let cfg = IntegratorConfig::with_step(1e-3);
    c.bench_function("rk4_unit_time", |b| {
        b.iter(|| integrate_geodesic(black_box(&m), black_box(&s0), 1.0, black_box(&cfg)))
    });
}

fn bench_foliation_check(c: &mut Criterion) {
    let eps = 0.5;
    let m = MilnorTriple::berger(eps).unwrap();
    let k = right_invariant_field(AlgebraVector::new(0.5, -0.7, 0.3), &m);
    let v = FrameField::general(move |g: &GroupPoint| {
        let kv = k.eval(g).add(&FrameVec::basis(2).scale(&0.2));
        let n = kv.norm();
        kv.scale(&(1.0 / n))
    });
    let vc = v.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let samples = random_points_where(&mut rng, 4, |g| {
        let c = vc.eval(g);
        c.is_finite() && c.c[0].hypot(c.c[1]) > 0.2
    })
    .unwrap();
    c.bench_function("metric_foliation_check_4_samples", |b| {
        b.iter(|| {
            is_metric_foliation(
                black_box(&m),
                black_box(&v),
                black_box(&samples),
                1e-6,
                &FdConfig::refined(1e-4),
            )
        })
    });
}

criterion_group!(
    benches,
    bench_christoffel,
    bench_group_ops,
    bench_geodesics,
    bench_foliation_check
);
criterion_main!(benches);
