use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hyperlattice::specfun::{complex_gamma, huber_closed, huber_oracle, sign_lemma_check, step_grid};
use hyperlattice::zeta::RepCounter;
use hyperlattice::{Complex64, QuadForm};

fn huber(c: &mut Criterion) {
    c.bench_function("huber_closed t=10 X=1e3", |b| {
        b.iter(|| huber_closed(black_box(10.0), black_box(1e3)).unwrap())
    });
    c.bench_function("huber_oracle t=10 X=1e3", |b| {
        b.iter(|| huber_oracle(black_box(10.0), black_box(1e3)).unwrap())
    });
}

fn gamma(c: &mut Criterion) {
    c.bench_function("complex_gamma 0.5+30i", |b| {
        b.iter(|| complex_gamma(black_box(Complex64::new(0.5, 30.0))).unwrap())
    });
    let grid = step_grid(0.01, 100.0);
    c.bench_function("sign check 1e4 points", |b| b.iter(|| sign_lemma_check(&grid).unwrap()));
}

fn rep_counts(c: &mut Criterion) {
    let counter = RepCounter::new(QuadForm::principal(5).unwrap()).unwrap();
    c.bench_function("r(Q, n) n <= 1e4, d = 5", |b| {
        b.iter(|| counter.counts_upto(black_box(10_000)).unwrap())
    });
}

criterion_group!(benches, huber, gamma, rep_counts);
criterion_main!(benches);
