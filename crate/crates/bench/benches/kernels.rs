use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use skolemkit::algebra::matrix_order_bound;
use skolemkit::certs::verify;
use skolemkit::lrs::{InputSpec, SequenceSpec};
use skolemkit::numfield::lll_reduce;
use skolemkit::padic::{coefficient_valuation, select_prime, PadicContext, PrimeStrategy, DEFAULT_PRIME_CAP};
use skolemkit::solver::{find_all_zeros, modulus_witness_search, SolveConfig};

fn example_one() -> SequenceSpec {
    SequenceSpec::from_i64(&[9, -10, 522, -4745, 4225], &[-30, -27, 0, 469, 1762]).unwrap()
}

fn series(c: &mut Criterion) {
    let s = example_one();
    let p = select_prime(&s, PrimeStrategy::Smallest, DEFAULT_PRIME_CAP).unwrap();
    let ctx = PadicContext::new(&s, p).unwrap();
    let mut g = c.benchmark_group("coefficient_valuation");
    for terms in [16u64, 64, 256] {
        g.bench_with_input(BenchmarkId::from_parameter(terms), &terms, |b, &t| {
            b.iter(|| coefficient_valuation(black_box(&ctx), 1, t).unwrap())
        });
    }
    g.finish();
}

fn class_search(c: &mut Criterion) {
    // 2^n + 3^n has no zeros; a small modulus certifies it
    let s = SequenceSpec::from_i64(&[5, -6], &[2, 5]).unwrap();
    c.bench_function("modulus_witness_search", |b| {
        b.iter(|| modulus_witness_search(black_box(&s), 1000, 1 << 20).unwrap())
    });
}

fn order_bound(c: &mut Criterion) {
    let g = example_one().recurrence.charpoly_ints();
    let mut grp = c.benchmark_group("matrix_order_bound");
    for m in [101u64, 1009, 65537] {
        grp.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| matrix_order_bound(black_box(&g), m)));
    }
    grp.finish();
}

fn verifier(c: &mut Criterion) {
    let out = find_all_zeros(&InputSpec::from(&example_one()), &SolveConfig::default()).unwrap();
    let cert = out.certificate().unwrap().clone();
    c.bench_function("verify_example_one", |b| b.iter(|| verify(black_box(&cert.input), black_box(&cert))));
}

fn lattice(c: &mut Criterion) {
    let basis: Vec<Vec<BigInt>> = (0..6)
        .map(|i| (0..6).map(|j| BigInt::from(((i * 7 + j * 13) % 17) as i64 - 8 + if i == j { 40 } else { 0 })).collect())
        .collect();
    c.bench_function("lll_6x6", |b| b.iter(|| lll_reduce(black_box(basis.clone()))));
}

criterion_group!(benches, series, class_search, order_bound, verifier, lattice);
criterion_main!(benches);
