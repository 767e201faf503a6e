use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use umbral_bench::{sample_family_series, sample_unit_series};
use umbral_core::operator::nc::{tn_words, Route};
use umbral_core::presets::{FamilySource, FamilySpec};
use umbral_core::umbral::{build_family, p_seq};

fn arithmetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for prec in [16, 32, 64] {
        let a = sample_unit_series(prec);
        let b = sample_family_series(prec);
        group.bench_with_input(BenchmarkId::new("mul", prec), &prec, |bench, _| {
            bench.iter(|| black_box(&a).try_mul(black_box(&b)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("inverse", prec), &prec, |bench, _| {
            bench.iter(|| black_box(&a).inverse().unwrap())
        });
    }
    for prec in [8, 16, 24] {
        let f = sample_family_series(prec);
        group.bench_with_input(BenchmarkId::new("revert", prec), &prec, |bench, _| {
            bench.iter(|| black_box(&f).revert().unwrap())
        });
    }
    group.finish();
}

fn families(c: &mut Criterion) {
    let mut group = c.benchmark_group("family");
    group.sample_size(20);
    for prec in [8, 16] {
        let f = sample_family_series(prec);
        group.bench_with_input(BenchmarkId::new("build", prec), &prec, |bench, _| {
            bench.iter(|| build_family(black_box(&f)).unwrap())
        });
    }
    let exp1 = FamilySpec::new(FamilySource::Exp1, 33).build().unwrap();
    group.bench_function("p_seq exp1 n=32", |bench| bench.iter(|| p_seq(black_box(&exp1), 32).unwrap()));
    group.finish();
}

fn words(c: &mut Criterion) {
    let mut group = c.benchmark_group("tn_words");
    for n in [3, 5] {
        for (name, route) in [("nu", Route::Nu), ("matrix", Route::Matrix)] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |bench, &n| {
                bench.iter(|| tn_words(black_box(n), route).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, arithmetic, families, words);
criterion_main!(benches);
