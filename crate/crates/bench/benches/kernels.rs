use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use privmap::channels::full_dephasing;
use privmap::codes::paper_subsystem_code;
use privmap::privacy::{certify_theorem2, privacy_defect, search_private_subspace};
use privmap::sampling::{random_density, random_hermitian};
use privmap::tensor::eig_hermitian;
use privmap::Tolerance;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eig(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for dim in [8usize, 32] {
        let h = random_hermitian(&mut rng, dim);
        c.bench_function(&format!("eig_hermitian/{dim}"), |b| {
            b.iter(|| eig_hermitian(black_box(&h), Tolerance::default()).unwrap())
        });
    }
}

fn channel_apply(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let lambda = full_dephasing(3).unwrap();
    let rho = random_density(&mut rng, 8, 8);
    c.bench_function("apply/full_dephasing_3", |b| b.iter(|| lambda.apply(black_box(&rho)).unwrap()));
    c.bench_function("choi/full_dephasing_3", |b| b.iter(|| black_box(&lambda).choi()));
}

fn privacy(c: &mut Criterion) {
    let lambda = full_dephasing(2).unwrap();
    let paper = paper_subsystem_code();
    c.bench_function("privacy_defect/two_qubit_code", |b| {
        b.iter(|| privacy_defect(&lambda, black_box(&paper.code), &paper.sigma_a).unwrap())
    });
    c.bench_function("certify/two_qubit_code", |b| {
        b.iter(|| certify_theorem2(&lambda, black_box(&paper.code), &paper.sigma_a, Tolerance::default()).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let lambda = full_dephasing(2).unwrap();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("full_dephasing_2/1000_trials", |b| {
        b.iter(|| search_private_subspace(black_box(&lambda), 2, 1000, 7).unwrap())
    });
    group.finish();
}

criterion_group!(benches, eig, channel_apply, privacy, search);
criterion_main!(benches);
