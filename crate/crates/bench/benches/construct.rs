use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use linkage_core::deleted::{closedness_check, orient_deleted_product};
use linkage_core::ledger::{explicit_verify, realize_by_path, PathOptions};
use linkage_core::linking::{base_embedding_k6, cgs_trials, link_matrix};

fn k6(c: &mut Criterion) {
    let f = base_embedding_k6();
    c.bench_function("link_matrix base", |b| b.iter(|| link_matrix(black_box(&f)).unwrap()));
    c.bench_function("cgs 10 trials", |b| b.iter(|| cgs_trials(10, black_box(7)).unwrap()));
}

fn orient(c: &mut Criterion) {
    c.bench_function("orient and close (3,2)", |b| {
        b.iter(|| closedness_check(&orient_deleted_product(black_box(3), 2).unwrap()).unwrap())
    });
}

fn ledger(c: &mut Criterion) {
    c.bench_function("path realize (3,2)", |b| {
        b.iter(|| realize_by_path(black_box(3), 2, 1, 1, PathOptions::default()).unwrap())
    });
    c.bench_function("explicit verify (5,2)", |b| b.iter(|| explicit_verify(black_box(5), 2, 1).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = k6, orient, ledger
}
criterion_main!(benches);
