use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use vincular::laguerre::{fv_forward, fv_inverse, xi};
use vincular::maps::{phi_hat, phi_sz, phi_sz_inv};
use vincular::poly::{cf_series, q_n};
use vincular::verify::run_check;
use vincular::Permutation;

fn sample(n: usize) -> Permutation {
    // a fixed scramble, not a random one
    let mut v: Vec<usize> = (1..=n).collect();
    for i in 0..n {
        v.swap(i, (i * 7 + 3) % n);
    }
    Permutation::new(v).unwrap()
}

fn maps(c: &mut Criterion) {
    let mut g = c.benchmark_group("maps");
    for n in [10, 100, 1000] {
        let s = sample(n);
        g.bench_with_input(BenchmarkId::new("phi_sz", n), &s, |b, s| b.iter(|| phi_sz(black_box(s))));
        g.bench_with_input(BenchmarkId::new("phi_sz_inv", n), &s, |b, s| b.iter(|| phi_sz_inv(black_box(s))));
        g.bench_with_input(BenchmarkId::new("phi_hat", n), &s, |b, s| b.iter(|| phi_hat(black_box(s))));
    }
    g.finish();
}

fn histories(c: &mut Criterion) {
    let mut g = c.benchmark_group("laguerre");
    for n in [10, 100, 1000] {
        let s = sample(n);
        let w = fv_forward(&s);
        g.bench_with_input(BenchmarkId::new("fv_forward", n), &s, |b, s| b.iter(|| fv_forward(black_box(s))));
        g.bench_with_input(BenchmarkId::new("fv_inverse", n), &w, |b, w| b.iter(|| fv_inverse(black_box(w))));
        g.bench_with_input(BenchmarkId::new("xi", n), &w, |b, w| b.iter(|| xi(black_box(w))));
    }
    g.finish();
}

fn polys(c: &mut Criterion) {
    let mut g = c.benchmark_group("poly");
    g.sample_size(10);
    g.bench_function("cf_series/8", |b| b.iter(|| cf_series(black_box(8)).unwrap()));
    g.bench_function("q_n/7", |b| b.iter(|| q_n(black_box(7)).unwrap()));
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for id in ["thm-1-3", "roundtrips", "lem-3-8"] {
        g.bench_function(id, |b| b.iter(|| run_check(id, 1, 7, 1).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, maps, histories, polys, checks);
criterion_main!(benches);
