use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use dq_core::graded::{graded_dim, GradedContext};
use dq_core::linalg::{rank, ExactMatrix};
use dq_core::qlie::{rmatrix_certs, QuantumLie};
use dq_core::rep::RContext;
use dq_core::RatFunc;

fn scalars(c: &mut Criterion) {
    let a = RatFunc::q_minus_qinv();
    let b = RatFunc::q_pow(3).add(&RatFunc::from_int(2));
    c.bench_function("ratfunc_mul_div", |bn| bn.iter(|| RatFunc::div(&RatFunc::mul(black_box(&a), &b), &b).unwrap()));
}

fn linalg(c: &mut Criterion) {
    let q = RatFunc::q();
    let m = ExactMatrix::from_dense(
        (0..12)
            .map(|i| (0..12).map(|j| if (i * 7 + j * 3) % 5 == 0 { RatFunc::from_int((i + j) as i64) } else if i == j { q.clone() } else { RatFunc::zero() }).collect())
            .collect(),
    );
    c.bench_function("rank_12x12", |bn| bn.iter(|| rank(black_box(&m))));
}

fn engine(c: &mut Criterion) {
    c.bench_function("rmatrix_suite_n2", |bn| bn.iter(|| rmatrix_certs(&RContext::new(2).unwrap()).unwrap()));
    c.bench_function("quantum_lie_n2", |bn| bn.iter(|| QuantumLie::new(2).unwrap()));
    let g = GradedContext::new(Arc::new(QuantumLie::new(2).unwrap())).unwrap();
    c.bench_function("sym_dim_n2_k3", |bn| bn.iter(|| graded_dim(black_box(&g.v2), 3, 3)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = scalars, linalg, engine
}
criterion_main!(benches);
