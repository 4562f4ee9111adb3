use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tautkit::exact::Partition;
use tautkit::faber::kappa_solve;
use tautkit::graphs::enumerate_stable;
use tautkit::hodge::{hodge_from_hurwitz, HurwitzRoute};
use tautkit::hurwitz::{hurwitz_bruteforce, hurwitz_transfer, EnumerationCaps, HurwitzQuery};
use tautkit::invariance::{cross_ratio_relation_m05, rl_apply};
use tautkit::psi::{witten_correlator, CorrelatorKey, IntersectionTable};

fn hurwitz(c: &mut Criterion) {
    let q = HurwitzQuery::connected(1, "3,1".parse::<Partition>().unwrap());
    c.bench_function("hurwitz bruteforce g=1 (3,1)", |b| {
        b.iter(|| hurwitz_bruteforce(black_box(&q), &EnumerationCaps::default()).unwrap())
    });
    let q = HurwitzQuery::connected(2, "4,2".parse::<Partition>().unwrap());
    c.bench_function("hurwitz transfer g=2 (4,2)", |b| {
        b.iter(|| hurwitz_transfer(black_box(&q), &EnumerationCaps::transfer_default()).unwrap())
    });
}

fn psi(c: &mut Criterion) {
    let key = CorrelatorKey::new(4, vec![2; 9]).unwrap();
    c.bench_function("witten correlator g=4 tau_2^9", |b| {
        b.iter(|| witten_correlator(black_box(&key), &mut IntersectionTable::new()).unwrap())
    });
}

fn hodge(c: &mut Criterion) {
    c.bench_function("hodge from hurwitz g=2 n=1", |b| {
        b.iter(|| {
            hodge_from_hurwitz(
                2,
                1,
                HurwitzRoute::Transfer,
                &EnumerationCaps::transfer_default(),
            )
            .unwrap()
        })
    });
}

fn faber(c: &mut Criterion) {
    c.bench_function("kappa solve g=7", |b| {
        b.iter(|| kappa_solve(black_box(7)).unwrap())
    });
}

fn graphs(c: &mut Criterion) {
    c.bench_function("enumerate stable (2,2)", |b| {
        b.iter(|| enumerate_stable(black_box(2), 2, true).unwrap())
    });
    let rel = cross_ratio_relation_m05();
    c.bench_function("r_1 on the cross-ratio relation", |b| {
        b.iter(|| rl_apply(black_box(&rel), 1).unwrap())
    });
}

criterion_group!(benches, hurwitz, psi, hodge, faber, graphs);
criterion_main!(benches);
