//! Compares the sequential fallback against the rayon path on the three
//! data-parallel kernels: exhaustive subset scans, sampled subset batches,
//! and whole-graph-space enumeration. Built without the `parallel` feature
//! only the sequential arms run.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ramseylab_core::constructions::{edge_budget_scan, ScanMode};
use ramseylab_core::exec::Parallelism;
use ramseylab_core::graph::Graph;
use ramseylab_core::oracle;
use ramseylab_core::property;
use ramseylab_core::rng::RngSpec;
use std::hint::black_box;

fn arms() -> Vec<(&'static str, Parallelism)> {
    let mut arms = vec![("seq", Parallelism::sequential())];
    if cfg!(feature = "parallel") {
        arms.push(("par", Parallelism::auto()));
    }
    arms
}

fn bench_exhaustive_property(c: &mut Criterion) {
    let g = Graph::gnp(24, 0.3, RngSpec::new(1)).unwrap();
    let mut group = c.benchmark_group("property_exhaustive_n24_s6");
    for (name, par) in arms() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| {
                let rep = property::check_exhaustive(black_box(&g), 6, 3, 1_000_000, par).unwrap();
                black_box(rep.subsets_checked)
            })
        });
    }
    group.finish();
}

fn bench_sampled_property(c: &mut Criterion) {
    let g = Graph::gnp(512, 0.1, RngSpec::new(2)).unwrap();
    let mut group = c.benchmark_group("property_sampled_n512_s16");
    for (name, par) in arms() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| {
                let rep = property::check_sampled(black_box(&g), 16, 4, 2000, RngSpec::new(7), par)
                    .unwrap();
                black_box(rep.failures_found)
            })
        });
    }
    group.finish();
}

fn bench_edge_scan(c: &mut Criterion) {
    let g = Graph::gnp(22, 0.3, RngSpec::new(3)).unwrap();
    let mut group = c.benchmark_group("edge_scan_exhaustive_n22_s6");
    for (name, par) in arms() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| {
                let scan = edge_budget_scan(
                    black_box(&g),
                    6,
                    7.0,
                    ScanMode::Exhaustive { budget: 1_000_000 },
                    par,
                )
                .unwrap();
                black_box(scan.violations)
            })
        });
    }
    group.finish();
}

fn bench_oracle_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_f_n6");
    group.sample_size(20);
    for (name, par) in arms() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| {
                let r = oracle::f_bruteforce(6, 4, 2, false, par).unwrap();
                black_box(r.f_value)
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_exhaustive_property,
    bench_sampled_property,
    bench_edge_scan,
    bench_oracle_enumeration
);
criterion_main!(benches);
