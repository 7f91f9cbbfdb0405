use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kernelwalk::asymptotics::{estimate_constant, poincare_expansion};
use kernelwalk::closed_forms::Method;
use kernelwalk::dfinite::{algebraic_to_ode, convolution_f0, ode_to_rec, rec_unroll};
use kernelwalk::guessing::{
    excursion_polynomial, guess_algebraic, verify_kernel_solution, walk_minimal_polynomial,
};
use kernelwalk::walk_engine::{dp_count, fixpoint_solve};
use kernelwalk::{ExactRational, PRec, Poly, StepSet};

fn g_rec() -> PRec {
    PRec::new(vec![Poly::from_ints(&[4, 2]), Poly::from_ints(&[-4, -8])])
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    g.bench_function("dp_count 500", |b| {
        b.iter(|| dp_count(&StepSet::simple(), black_box(500)))
    });
    g.bench_function("fixpoint 60", |b| {
        b.iter(|| fixpoint_solve(&StepSet::simple(), black_box(60)))
    });
    g.finish();
}

fn closed_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve order 100");
    g.sample_size(10);
    for m in Method::ALL {
        g.bench_function(m.name(), |b| b.iter(|| m.solve(black_box(100))));
    }
    g.finish();
}

fn guessing(c: &mut Criterion) {
    let f = fixpoint_solve(&StepSet::simple(), 8);
    c.bench_function("guess d=2", |b| {
        b.iter(|| guess_algebraic(black_box(&f), 2, 2, 2))
    });
    c.bench_function("certificate N=16", |b| {
        b.iter(|| verify_kernel_solution(&walk_minimal_polynomial(), 16))
    });
}

fn dfinite(c: &mut Criterion) {
    let p = excursion_polynomial();
    c.bench_function("algebraic to recurrence", |b| {
        b.iter(|| ode_to_rec(&algebraic_to_ode(black_box(&p)).unwrap()))
    });
    let rec = ode_to_rec(&algebraic_to_ode(&p).unwrap()).unwrap();
    let init = [ExactRational::from(1), ExactRational::from(0)];
    c.bench_function("unroll 2000", |b| {
        b.iter(|| rec_unroll(&rec, &init, black_box(2000)))
    });
    c.bench_function("convolution 300", |b| {
        b.iter(|| convolution_f0(black_box(300)))
    });
}

fn asymptotics(c: &mut Criterion) {
    c.bench_function("expansion depth 8", |b| {
        b.iter(|| poincare_expansion(black_box(&g_rec()), 8))
    });
    let values = rec_unroll(&g_rec(), &[ExactRational::from(1)], 10_000).unwrap();
    let e = poincare_expansion(&g_rec(), 4).unwrap().remove(0);
    c.bench_function("estimate at 10^4", |b| {
        b.iter(|| estimate_constant(&values, &e, black_box(&[1000, 10_000]), 50))
    });
}

criterion_group!(
    benches,
    enumeration,
    closed_forms,
    guessing,
    dfinite,
    asymptotics
);
criterion_main!(benches);
