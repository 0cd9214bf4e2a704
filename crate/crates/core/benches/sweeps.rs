//! Parallel sweeps against a single-threaded pool. Build with
//! `--no-default-features` to time the sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPool;

use conebound::bounds::{certify_theorem1, compute_a_seeded, ConeChoice};
use conebound::cone::min_enclosing_cone;
use conebound::geometry::{ChartedMap, MetricMode};
use conebound::models::ParaboloidFamily;
use conebound::sampling::SampleSpec;
use conebound::Vector;

fn pools() -> Vec<(String, ThreadPool)> {
    let n = rayon::current_num_threads();
    let mut out = vec![("1-thread".to_string(), rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap())];
    if n > 1 {
        out.push((format!("{n}-threads"), rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()));
    }
    out
}

fn theorem1(c: &mut Criterion) {
    let fam = ParaboloidFamily::new(2, 0.1, 10.0).unwrap();
    let spec = SampleSpec::radial(10_000, 0);
    let o = Vector::zeros(3);
    let mut group = c.benchmark_group("certify_theorem1");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| certify_theorem1(&fam, &MetricMode::Induced, &o, &ConeChoice::Fit, &spec, false)))
        });
    }
    group.finish();
}

fn cone_fit(c: &mut Criterion) {
    let fam = ParaboloidFamily::new(3, 0.1, 10.0).unwrap();
    let images: Vec<Vector> =
        SampleSpec::radial(100_000, 1).generate(&fam.domain_box()).iter().map(|x| fam.evaluate(x)).collect();
    let o = Vector::zeros(4);
    let mut group = c.benchmark_group("min_enclosing_cone");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| min_enclosing_cone(&images, &o)))
        });
    }
    group.finish();
}

fn a_eta(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_a");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| pool.install(|| compute_a_seeded(2.0, 0))));
    }
    group.finish();
}

criterion_group!(benches, theorem1, cone_fit, a_eta);
criterion_main!(benches);
