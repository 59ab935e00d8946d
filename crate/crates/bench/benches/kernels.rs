use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use lauricella::{eval_fd_exact, eval_fd_float, multinomial_lhs, multinomial_rhs};
use lauricella_bench::{fd_spec, fd_spec_f64, identity_case, label, SIZES};

fn fd_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("fd_exact");
    for &(n, r) in SIZES {
        let spec = fd_spec(n, r);
        group.throughput(Throughput::Elements(spec.term_count() as u64));
        group.bench_with_input(
            BenchmarkId::from_parameter(label(n, r)),
            &spec,
            |b, spec| b.iter(|| eval_fd_exact(black_box(spec)).unwrap()),
        );
    }
    group.finish();
}

fn fd_float(c: &mut Criterion) {
    let mut group = c.benchmark_group("fd_float");
    for &(n, r) in SIZES {
        let (bs, cc, xs) = fd_spec_f64(n, r);
        group.throughput(Throughput::Elements(fd_spec(n, r).term_count() as u64));
        group.bench_function(BenchmarkId::from_parameter(label(n, r)), |b| {
            b.iter(|| eval_fd_float(n, black_box(&bs), cc, black_box(&xs)).unwrap())
        });
    }
    group.finish();
}

fn identity_sides(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity");
    for &(n, r) in SIZES {
        let case = identity_case(n, r);
        group.throughput(Throughput::Elements(case.lhs_term_count() as u64));
        group.bench_with_input(BenchmarkId::new("lhs", label(n, r)), &case, |b, case| {
            b.iter(|| multinomial_lhs(black_box(case)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rhs", label(n, r)), &case, |b, case| {
            b.iter(|| multinomial_rhs(black_box(case)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, fd_exact, fd_float, identity_sides);
criterion_main!(benches);
