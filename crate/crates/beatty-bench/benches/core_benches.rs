use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use beatty_core::beatty::BeattyParams;
use beatty_core::covering::{construct_cfc, covering_criterion};
use beatty_core::cyclotomic::cyclotomic_poly;
use beatty_core::search::enumerate_candidates;

fn bench_transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("fourier");
    for q in [24i64, 121, 360] {
        let params = BeattyParams::new(7, q, 3).unwrap();
        group.bench_with_input(BenchmarkId::new("direct", q), &q, |b, _| {
            b.iter(|| params.dft_direct(1))
        });
        group.bench_with_input(BenchmarkId::new("closed_form", q), &q, |b, _| {
            b.iter(|| params.ft_closed_form(1).unwrap())
        });
    }
    group.finish();
}

fn bench_covering(c: &mut Criterion) {
    let mut group = c.benchmark_group("covering_criterion");
    for q in [31i64, 127] {
        let inst = construct_cfc(q, 1, 0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, _| {
            b.iter(|| covering_criterion(&inst))
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    c.bench_function("enumerate_candidates_m5", |b| {
        b.iter(|| enumerate_candidates(5, 33))
    });
}

fn bench_cyclotomic(c: &mut Criterion) {
    c.bench_function("cyclotomic_poly_3600", |b| {
        b.iter(|| cyclotomic_poly(3600))
    });
}

criterion_group!(benches, bench_transforms, bench_covering, bench_search, bench_cyclotomic);
criterion_main!(benches);
