use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use xtri_core::artin::{eigen_basis, TruncatedAlgebra};
use xtri_core::good_pairs::{census, DEFAULT_CENSUS_BOUND};
use xtri_core::sample::{random_eigen_problem, rng};
use xtri_core::schubert::tangent_table;
use xtri_core::weyl::{all_permutations, bruhat_leq, bruhat_leq_subword};

fn bruhat(c: &mut Criterion) {
    let perms = all_permutations(5);
    c.bench_function("bruhat_ehresmann_s5", |b| {
        b.iter(|| perms.iter().filter(|u| bruhat_leq(u, black_box(&perms[77])).unwrap()).count())
    });
    c.bench_function("bruhat_subword_s5", |b| {
        b.iter(|| perms.iter().filter(|u| bruhat_leq_subword(u, black_box(&perms[77])).unwrap()).count())
    });
}

fn census_s4(c: &mut Criterion) {
    c.bench_function("census_n4", |b| b.iter(|| census(black_box(4), 1, DEFAULT_CENSUS_BOUND).unwrap()));
}

fn schubert(c: &mut Criterion) {
    let mut g = c.benchmark_group("tangent_table_n4");
    g.sample_size(10);
    g.bench_function("combinatorial", |b| b.iter(|| tangent_table(black_box(4), false).unwrap()));
    g.bench_function("jacobian", |b| b.iter(|| tangent_table(black_box(4), true).unwrap()));
    g.finish();
}

fn eigen(c: &mut Criterion) {
    let alg = TruncatedAlgebra::truncated(3);
    let mut r = rng(7);
    let (f, lams) = random_eigen_problem(&mut r, &alg, 4).unwrap();
    c.bench_function("eigen_basis_n4_eps3", |b| b.iter(|| eigen_basis(black_box(&f), &lams).unwrap()));
}

criterion_group!(benches, bruhat, census_s4, schubert, eigen);
criterion_main!(benches);
