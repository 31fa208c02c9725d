use boxkit::constructions::realize;
use boxkit::geometry::{verify_cover, CoverMode};
use boxkit::search::{solve_cover, SearchBudget};
use boxkit_bench::{fig6, odd_brick_instance, product_625};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn verify(c: &mut Criterion) {
    let family = product_625();
    c.bench_function("verify 625-box product", |b| {
        b.iter(|| verify_cover(black_box(&family), 1, CoverMode::Exact))
    });
}

fn search(c: &mut Criterion) {
    let inst = odd_brick_instance();
    let budget = SearchBudget::default();
    c.bench_function("solve odd bricks of [5]^2", |b| b.iter(|| solve_cover(black_box(&inst), &budget)));
}

fn construct(c: &mut Criterion) {
    let ip = fig6(3);
    c.bench_function("realize 61-brick partition", |b| b.iter(|| realize(black_box(&ip), 3, 0).unwrap()));
}

criterion_group!(benches, verify, search, construct);
criterion_main!(benches);
