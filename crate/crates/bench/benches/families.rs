use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use qeuler::exactq::{rat_int, QPoly, QRat};
use qeuler::sequences::{closed_value, FamilyTag, NumberTable};

fn bench_closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    for n in [8usize, 16, 24] {
        group.bench_function(format!("modified_euler_n{n}"), |b| {
            b.iter(|| closed_value(FamilyTag::ModifiedEuler, black_box(n)).unwrap())
        });
    }
    group.bench_function("modified_bernoulli_n16", |b| {
        b.iter(|| closed_value(FamilyTag::ModifiedBernoulli, black_box(16)).unwrap())
    });
    group.finish();
}

fn bench_recurrence(c: &mut Criterion) {
    // fresh table per iteration so memoization does not hide the work
    c.bench_function("recurrence/modified_euler_to_16", |b| {
        b.iter_batched(
            || NumberTable::new(FamilyTag::ModifiedEuler),
            |table| table.value(black_box(16)),
            BatchSize::SmallInput,
        )
    });
}

fn bench_normalize(c: &mut Criterion) {
    // gcd-heavy reduction on structured cyclotomic-like products
    let mut a = QPoly::one();
    let mut b = QPoly::one();
    for l in 1..=16usize {
        let mut coeffs = vec![rat_int(0); l + 1];
        coeffs[0] = rat_int(1);
        coeffs[l] = rat_int(1);
        let f = QPoly::new(coeffs);
        a = &a * &f;
        if l % 2 == 0 {
            b = &b * &f;
        }
    }
    c.bench_function("qrat/normalize_structured_products", |bch| {
        bch.iter(|| QRat::new(black_box(a.clone()), black_box(b.clone())).unwrap())
    });
}

criterion_group!(benches, bench_closed_forms, bench_recurrence, bench_normalize);
criterion_main!(benches);
