use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use projtomo_core::bootstrap::{run_bootstrap, BootstrapConfig};
use projtomo_core::bounds::projector_threshold_exact;
use projtomo_core::jordan::{blockwise_metrics, jordan_decompose};
use projtomo_core::pgm::{hayashi_sample, pgm_expected_affinity, LearnerKind};
use projtomo_core::quantum::linalg::thin_svd;
use projtomo_core::quantum::{fidelity, haar_projector, haar_state, haar_unitary};
use projtomo_core::wss::{wss_distribution, Spectrum};
use projtomo_core::SeededRng;

fn linear_algebra(c: &mut Criterion) {
    let mut g = SeededRng::new(1);
    let p = haar_projector(60, 20, &mut g).unwrap();
    let q = haar_projector(60, 20, &mut g).unwrap();
    c.bench_function("jordan_decompose d=60 r=20", |b| {
        b.iter(|| blockwise_metrics(&jordan_decompose(black_box(&p), black_box(&q)).unwrap()))
    });
    let (ps, qs) = (p.state().unwrap(), q.state().unwrap());
    c.bench_function("fidelity d=60", |b| b.iter(|| fidelity(black_box(&ps), black_box(&qs)).unwrap()));
    let m = haar_unitary(40, &mut g).unwrap().columns(0, 20).into_owned();
    c.bench_function("thin_svd 40x20", |b| b.iter(|| thin_svd(black_box(&m))));
    c.bench_function("haar_unitary d=60", |b| b.iter(|| haar_unitary(60, &mut g).unwrap()));
}

fn exact_combinatorics(c: &mut Criterion) {
    c.bench_function("pgm_expected_affinity n=20 d=4 r=2", |b| {
        b.iter(|| pgm_expected_affinity(black_box(20), 4, 2).unwrap())
    });
    let spec = Spectrum::uniform(4, 6).unwrap();
    c.bench_function("wss_distribution n=10 d=6 r=4", |b| b.iter(|| wss_distribution(black_box(10), &spec).unwrap()));
    let eps = num_rational::BigRational::new(1.into(), 80.into());
    c.bench_function("projector_threshold_exact", |b| {
        b.iter(|| projector_threshold_exact(4, 2, black_box(&eps)).unwrap())
    });
}

fn sampling(c: &mut Criterion) {
    let mut g = SeededRng::new(2);
    let u = haar_state(4, &mut g).unwrap();
    c.bench_function("hayashi_sample n=10 d=4", |b| b.iter(|| hayashi_sample(black_box(&u), 10, &mut g).unwrap()));
}

fn bootstrap(c: &mut Criterion) {
    let cfg = BootstrapConfig::new(60, 20, 0.1, 0.3, LearnerKind::AdversarialDiscard).unwrap();
    let mut seed = 0u64;
    c.bench_function("run_bootstrap d=60 r=20", |b| {
        b.iter_batched(
            || {
                seed += 1;
                let mut g = SeededRng::new(seed);
                let p = haar_projector(60, 20, &mut g).unwrap();
                (p, g)
            },
            |(p, mut g)| run_bootstrap(&cfg, &p, &mut g).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(fast, linear_algebra, exact_combinatorics, sampling);
criterion_group! {
    name = slow;
    config = Criterion::default().sample_size(10);
    targets = bootstrap
}
criterion_main!(fast, slow);
