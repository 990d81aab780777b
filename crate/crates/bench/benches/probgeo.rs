use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use probgeo_bench::{cauchy_sample, gaussian_chart};
use probgeo_core::{
    barycenter_of_distribution, barycenter_of_sample, chart_from_sample, initial_moment, pseudo_observations,
    run_clt_experiment, Distribution, Law, QuadratureSpec, VectorSample,
};

fn sample_barycenter(c: &mut Criterion) {
    let chart = gaussian_chart();
    let mut group = c.benchmark_group("sample_barycenter");
    for n in [1_000usize, 100_000] {
        let s = cauchy_sample(n, 1);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("gaussian_chart", n), &s, |b, s| {
            b.iter(|| barycenter_of_sample(black_box(s), &chart).unwrap())
        });
        let empirical = chart_from_sample(&s, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::new("empirical_chart", n), &s, |b, s| {
            b.iter(|| barycenter_of_sample(black_box(s), &empirical).unwrap())
        });
    }
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let quad = QuadratureSpec::default();
    let chart = gaussian_chart();
    let mut group = c.benchmark_group("quadrature");
    for d in [
        Distribution::standard_normal(),
        Distribution::cauchy(0.0, 1.0).unwrap(),
        Distribution::pareto(1.0, 2.0).unwrap(),
    ] {
        let intrinsic = probgeo_core::Chart::from_distribution(d);
        group.bench_function(BenchmarkId::new("intrinsic_barycenter", d.to_string()), |b| {
            b.iter(|| barycenter_of_distribution(black_box(&d), &intrinsic, &quad).unwrap())
        });
    }
    let cauchy = Distribution::cauchy(0.0, 1.0).unwrap();
    group.bench_function("cauchy_gaussian_moment_8", |b| {
        b.iter(|| initial_moment(Law::distribution(black_box(&cauchy)), &chart, 8).unwrap())
    });
    group.finish();
}

fn small_clt(c: &mut Criterion) {
    let d = Distribution::cauchy(0.0, 1.0).unwrap();
    let chart = gaussian_chart();
    let mut group = c.benchmark_group("clt");
    group.sample_size(10);
    group.bench_function("cauchy_n100_reps200", |b| {
        b.iter(|| run_clt_experiment(&d, &chart, 100, 200, black_box(3)).unwrap())
    });
    group.finish();
}

fn copula(c: &mut Criterion) {
    let x = cauchy_sample(10_000, 5).into_inner();
    let y = cauchy_sample(10_000, 6).into_inner();
    let vs = VectorSample::from_columns(&[x, y]).unwrap();
    c.bench_function("pseudo_observations_10k_x2", |b| {
        b.iter(|| pseudo_observations(black_box(&vs)).unwrap())
    });
}

criterion_group!(benches, sample_barycenter, quadrature, small_clt, copula);
criterion_main!(benches);
