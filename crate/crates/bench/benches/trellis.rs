use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tbtrellis::catalog;
use tbtrellis::oracle;
use tbtrellis::reduction::{plan_forward_reduction, reduce_error_trellis};
use tbtrellis::trellis::{build_error_trellis, enumerate_paths};
use tbtrellis::{SymbolSequence, SyndromeFormer};

fn word(n: usize, len: usize) -> SymbolSequence {
    // Deterministic pseudo-random symbols.
    let mut x = 0x9e37_79b9u32;
    let symbols = (0..len)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 17;
            x ^= x << 5;
            x & ((1 << n) - 1)
        })
        .collect();
    SymbolSequence::new(n, symbols).unwrap()
}

fn syndrome(c: &mut Criterion) {
    let former = SyndromeFormer::new(&catalog::h2()).unwrap();
    let mut group = c.benchmark_group("tailbiting_syndrome");
    for len in [16, 256, 4096] {
        let z = word(3, len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &z, |b, z| {
            b.iter(|| former.tailbiting_syndrome(black_box(z)).unwrap())
        });
    }
    group.finish();
}

fn trellis(c: &mut Criterion) {
    let h = catalog::h2();
    let z = word(3, 64);
    c.bench_function("build_error_trellis/h2/64", |b| {
        b.iter(|| build_error_trellis(black_box(&h), black_box(&z)).unwrap())
    });
    let plan = plan_forward_reduction(&h).unwrap();
    c.bench_function("reduce_error_trellis/h2/64", |b| {
        b.iter(|| reduce_error_trellis(black_box(&h), black_box(&z), &plan).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let h = catalog::h1();
    let z = word(3, 6);
    let full = build_error_trellis(&h, &z).unwrap();
    let plan = plan_forward_reduction(&h).unwrap();
    let reduced = reduce_error_trellis(&h, &z, &plan).unwrap().reduced;
    let mut group = c.benchmark_group("enumerate_paths/h1/6");
    group.bench_function("original", |b| b.iter(|| enumerate_paths(black_box(&full)).unwrap()));
    group.bench_function("reduced", |b| b.iter(|| enumerate_paths(black_box(&reduced)).unwrap()));
    group.bench_function("oracle", |b| b.iter(|| oracle::coset_paths(black_box(&h), &z).unwrap()));
    group.finish();
}

criterion_group!(benches, syndrome, trellis, enumeration);
criterion_main!(benches);
