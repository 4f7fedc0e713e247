use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polyrips_core::predictor::barcode;
use polyrips_core::sampler::certified_sample;
use polyrips_core::stars::thresholds;
use polyrips_core::{betti, construct, vr_complex, Convention, DistanceMatrix, FiniteCyclicGraph, SampleSpec};

fn star_thresholds(c: &mut Criterion) {
    let mut g = c.benchmark_group("thresholds");
    for (n, l) in [(8, 1), (9, 1), (15, 2), (20, 3)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n}/{l}")), &(n, l), |b, &(n, l)| {
            b.iter(|| thresholds(black_box(n), black_box(l)).unwrap())
        });
    }
    g.finish();
}

fn polygon_barcode(c: &mut Criterion) {
    let mut g = c.benchmark_group("barcode");
    for n in [6, 15, 30] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| barcode(black_box(n), Convention::Strict).unwrap())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let pts = certified_sample(6, 1, &[1.6], 36).unwrap();
    let d = DistanceMatrix::from_polygon_points(6, &pts).unwrap();
    c.bench_function("vr_complex+betti/P6 r=1.6", |b| {
        b.iter(|| {
            let k = vr_complex(&d, black_box(1.6), Convention::Closed, 3).unwrap();
            betti(&k, 3).unwrap()
        })
    });
}

fn engine(c: &mut Criterion) {
    let pts = certified_sample(15, 2, &[1.9], 600).unwrap();
    c.bench_function("cyclic analyze/P15 600 points", |b| {
        b.iter(|| FiniteCyclicGraph::from_points(15, black_box(&pts), 1.9, Convention::Closed).unwrap().analyze())
    });
}

fn sampler(c: &mut Criterion) {
    let spec = SampleSpec { n: 6, l: 1, z: 3, eps: 0.1, r: 1.6, seed: 0 };
    c.bench_function("construct/P6 z=3 eps=0.1", |b| b.iter(|| construct(black_box(&spec)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = star_thresholds, polygon_barcode, oracle, engine, sampler
}
criterion_main!(benches);
