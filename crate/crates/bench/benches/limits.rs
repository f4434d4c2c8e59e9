//! End-to-end benchmarks: limit points of reference chains and Puiseux
//! expansions of classic curves.

use criterion::{criterion_group, criterion_main, Criterion};

use qclim_core::chain::{limit_points, puiseux_expansions, LimitConfig, RegularChain};
use qclim_core::mpoly::MPoly;
use qclim_core::rat::{rat_int, Rational};
use qclim_core::vars::VarOrder;

fn vars(names: &[&str]) -> VarOrder {
    VarOrder::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
}

fn mono(n: usize, e: &[(usize, u32)], c: i64) -> MPoly<Rational> {
    let mut exp = vec![0u32; n];
    for &(i, k) in e {
        exp[i] = k;
    }
    MPoly::monomial(n, exp, rat_int(c))
}

/// R = {X1 X2^2 + X2 + 1, (X1 + 2) X1 X3^2 + (X2 + 1)(X3 + 1)}.
fn intro_chain() -> RegularChain {
    let r1 = mono(3, &[(0, 1), (1, 2)], 1)
        .add(&mono(3, &[(1, 1)], 1))
        .add(&mono(3, &[], 1));
    let r2 = mono(3, &[(0, 2), (2, 2)], 1)
        .add(&mono(3, &[(0, 1), (2, 2)], 2))
        .add(&mono(3, &[(1, 1), (2, 1)], 1))
        .add(&mono(3, &[(1, 1)], 1))
        .add(&mono(3, &[(2, 1)], 1))
        .add(&mono(3, &[], 1));
    RegularChain::new(vars(&["X1", "X2", "X3"]), vec![r1, r2])
}

fn bench_limit_points(c: &mut Criterion) {
    let chain = intro_chain();
    let cfg = LimitConfig::default();
    let mut g = c.benchmark_group("limit_points");
    g.sample_size(20);
    g.bench_function("intro_all_fibers", |b| {
        b.iter(|| limit_points(&chain, &cfg).unwrap())
    });
    let hyper = RegularChain::new(
        vars(&["X1", "X2"]),
        vec![mono(2, &[(0, 1), (1, 1)], 1).add(&mono(2, &[], -1))],
    );
    g.bench_function("hyperbola_empty", |b| {
        b.iter(|| limit_points(&hyper, &cfg).unwrap())
    });
    g.finish();
}

fn bench_puiseux(c: &mut Criterion) {
    let cusp = mono(2, &[(1, 2)], 1).add(&mono(2, &[(0, 3)], -1));
    // (Y^2 - X^3)^2 - X^6 Y: ramified with a deeper ladder
    let y2x3 = cusp.clone();
    let hard = y2x3.mul(&y2x3).add(&mono(2, &[(0, 6), (1, 1)], -1));
    let r1 = mono(2, &[(0, 1), (1, 2)], 1)
        .add(&mono(2, &[(1, 1)], 1))
        .add(&mono(2, &[], 1));
    let mut g = c.benchmark_group("puiseux");
    g.sample_size(30);
    g.bench_function("cusp_tau8", |b| {
        b.iter(|| puiseux_expansions(&cusp, 8).unwrap())
    });
    g.bench_function("two_segment_tau6", |b| {
        b.iter(|| puiseux_expansions(&hard, 6).unwrap())
    });
    g.bench_function("intro_r1_tau12", |b| {
        b.iter(|| puiseux_expansions(&r1, 12).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bench_limit_points, bench_puiseux);
criterion_main!(benches);
