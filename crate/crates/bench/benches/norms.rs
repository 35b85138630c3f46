use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cpmult_bench::{channel, fixtures, optimizer};
use cpmult_core::conditions::{condition_matrix, search_basis, SearchConfig};
use cpmult_core::norms::{mult_ratio, norm_2_to_2_exact, norm_q_to_p, nu_p, Domain};

fn exact_two_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm_2_to_2_exact");
    for (label, phi) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &phi, |b, phi| {
            b.iter(|| norm_2_to_2_exact(black_box(phi)));
        });
    }
    let wh = channel("werner-holevo:3");
    let tensor = wh.tensor(&wh);
    group.bench_function("werner-holevo-3-squared", |b| b.iter(|| norm_2_to_2_exact(black_box(&tensor))));
    group.finish();
}

fn maximal_output_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("nu_p");
    group.sample_size(20);
    let cfg = optimizer(16);
    for (label, phi) in fixtures() {
        for p in [2.0, 5.0] {
            group.bench_with_input(BenchmarkId::new(label, p), &phi, |b, phi| {
                b.iter(|| nu_p(black_box(phi), p, &cfg).unwrap());
            });
        }
    }
    group.finish();
}

fn induced_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm_q_to_p");
    group.sample_size(20);
    let cfg = optimizer(16);
    let phi = channel("random:3:3:3:2");
    group.bench_function("1->3 unrestricted", |b| {
        b.iter(|| norm_q_to_p(black_box(&phi), 1.0, 3.0, Domain::Unrestricted, &cfg).unwrap());
    });
    group.bench_function("2->4 self-adjoint", |b| {
        b.iter(|| norm_q_to_p(black_box(&phi), 2.0, 4.0, Domain::SelfAdjoint, &cfg).unwrap());
    });
    group.finish();
}

fn multiplicativity(c: &mut Criterion) {
    let mut group = c.benchmark_group("mult_ratio");
    group.sample_size(10);
    let cfg = optimizer(16);
    let wh = channel("werner-holevo:3");
    let qubit = channel("random:2:2:2:1");
    group.bench_function("qubit x werner-holevo-3, p=2", |b| {
        b.iter(|| mult_ratio(black_box(&qubit), &wh, 2.0, &cfg).unwrap());
    });
    group.bench_function("werner-holevo-3 squared, p=5", |b| {
        b.iter(|| mult_ratio(black_box(&wh), &wh, 5.0, &cfg).unwrap());
    });
    group.finish();
}

fn conditions(c: &mut Criterion) {
    let mut group = c.benchmark_group("conditions");
    let qutrit = channel("random:3:3:3:2");
    group.bench_function("condition_matrix qutrit", |b| {
        b.iter(|| condition_matrix(black_box(&qutrit), None).unwrap());
    });
    let qubit = channel("random:2:2:2:1");
    group.sample_size(10);
    group.bench_function("search_basis qubit", |b| {
        b.iter(|| search_basis(black_box(&qubit), &SearchConfig::default()).unwrap());
    });
    group.finish();
}

criterion_group!(benches, exact_two_norm, maximal_output_norm, induced_norm, multiplicativity, conditions);
criterion_main!(benches);
