use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use rand::Rng;

use projtomo_core::jordan::{blockwise_metrics, jordan_decompose};
use projtomo_core::pgm::*;
use projtomo_core::quantum::{haar_projector, haar_state, Projector};
use projtomo_core::stats::{ks_critical_1pct, ks_statistic, Summary};
use projtomo_core::SeededRng;

#[test]
fn full_rank_affinity_is_one() {
    for n in 0..=30 {
        for d in 1..=5 {
            assert_eq!(pgm_expected_affinity(n, d, d).unwrap(), BigRational::one(), "n={n} d={d}");
        }
    }
}

#[test]
fn monotonicity_in_n_is_reported() {
    // Reported rather than asserted: nothing guarantees it.
    let mut violations = Vec::new();
    for d in 2..=5 {
        for r in 1..=d {
            let vals: Vec<BigRational> = (1..=20).map(|n| pgm_expected_affinity(n, d, r).unwrap()).collect();
            for (i, w) in vals.windows(2).enumerate() {
                if w[1] < w[0] {
                    violations.push((i + 1, d, r));
                }
            }
        }
    }
    println!("monotonicity violations (n, d, r): {violations:?}");
}

#[test]
fn dense_pgm_mean_affinity() {
    let mut g = SeededRng::new(400);
    let p = haar_projector(2, 1, &mut g).unwrap();
    let affs: Vec<f64> = (0..10_000u64)
        .map(|s| pgm_dense_simulate(&p, 3, &mut SeededRng::with_stream(401, s)).unwrap().trace_with(&p))
        .collect();
    let s = Summary::of(&affs);
    let want = pgm_expected_affinity(3, 2, 1).unwrap().to_f64().unwrap();
    assert!((want - 0.8).abs() < 1e-15);
    assert!(s.within(want, 3.0), "{} ± {} vs {want}", s.mean, s.std_err);
}

#[test]
fn dense_pgm_full_rank_is_identity() {
    let p = Projector::identity(3).unwrap();
    for s in 0..5 {
        let out = pgm_dense_simulate(&p, 4, &mut SeededRng::new(s)).unwrap();
        assert!(out.approx_eq(&p, 1e-12));
    }
}

#[test]
fn hayashi_overlap_law_ks() {
    let (n, d) = (10usize, 4usize);
    let samples = 100_000;
    let mut g = SeededRng::new(410);
    let u = haar_state(d, &mut g).unwrap();
    let drawn: Vec<f64> = (0..samples).map(|_| hayashi_sample(&u, n, &mut g).unwrap().overlap(&u)).collect();
    // rejection oracle against tⁿ(1−t)^{d−2}
    let dens = |t: f64| t.powi(n as i32) * (1.0 - t).powi(d as i32 - 2);
    let peak = dens(n as f64 / (n + d - 2) as f64);
    let mut h = SeededRng::new(411);
    let mut oracle = Vec::with_capacity(samples);
    while oracle.len() < samples {
        let t: f64 = h.random();
        if h.random::<f64>() * peak < dens(t) {
            oracle.push(t);
        }
    }
    let ks = ks_statistic(&drawn, &oracle);
    assert!(ks < ks_critical_1pct(samples, samples), "KS {ks}");
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn mock_learners_meet_budget(seed in any::<u64>(), r in 1usize..12, eps in 0.01f64..1.0, which in 0usize..3) {
        let kind = [LearnerKind::AdversarialDiscard, LearnerKind::UniformTilt, LearnerKind::ExactOracle][which];
        let d = 2 * r + 2;
        let mut g = SeededRng::new(seed);
        let p = haar_projector(d, r, &mut g).unwrap();
        let spec = LearnerSpec::new(kind, eps).unwrap();
        let out = mock_learner_run(&spec, &p, &mut g).unwrap();
        let td = blockwise_metrics(&jordan_decompose(&p, &out).unwrap()).trace_distance;
        match kind {
            LearnerKind::ExactOracle => prop_assert!(td < 1e-12),
            _ => prop_assert!((td - eps).abs() < 1e-9, "td={td} eps={eps}"),
        }
    }
}
