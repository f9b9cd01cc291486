use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperlattice::conjcls::ConjCounter;
use hyperlattice::modgroup::{ball_enumerate, classical_count};
use hyperlattice::{make_class, QuadForm, UpperHalfPoint};
use hyperlattice_bench::generic_center;

fn ball(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball");
    let z = generic_center();
    for x in [1e3, 1e4, 1e5] {
        g.bench_with_input(BenchmarkId::new("enumerate", x), &x, |b, &x| {
            b.iter(|| ball_enumerate(z, z, black_box(x)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("count_at_i", x), &x, |b, &x| {
            let i = UpperHalfPoint::i();
            b.iter(|| classical_count(i, i, black_box(x)).unwrap())
        });
    }
    g.finish();
}

fn conjugacy(c: &mut Criterion) {
    let mut g = c.benchmark_group("conj");
    g.sample_size(20);
    let z = generic_center();
    for d in [5, 8, 13] {
        let cls = make_class(QuadForm::principal(d).unwrap(), 1).unwrap();
        g.bench_with_input(BenchmarkId::new("coset_1e4", d), &cls, |b, cls| {
            b.iter(|| ConjCounter::coset(cls, z, black_box(1e4)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("filter_1e2", d), &cls, |b, cls| {
            b.iter(|| ConjCounter::filter(cls, z, black_box(100.0)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, ball, conjugacy);
criterion_main!(benches);
