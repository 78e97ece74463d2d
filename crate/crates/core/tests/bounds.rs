use num_rational::BigRational;
use num_traits::ToPrimitive;

use projtomo_core::bounds::*;
use projtomo_core::pgm::{hayashi_sample, pgm_dense_simulate};
use projtomo_core::quantum::{haar_projector, haar_state, Projector};
use projtomo_core::stats::Summary;
use projtomo_core::SeededRng;

#[test]
fn pure_bound_monotonicity() {
    for n in 0..=20u64 {
        for d in 1..=20u64 {
            for k in 0..=20u64 {
                let b = pure_moment_bound(n, d, k).unwrap();
                if d > 1 {
                    assert!(pure_moment_bound(n, d, k + 1).unwrap() < b, "k: n={n} d={d} k={k}");
                    assert!(pure_moment_bound(n, d + 1, k).unwrap() < b || k == 0, "d: n={n} d={d} k={k}");
                    assert!(pure_moment_bound(n + 1, d, k).unwrap() > b || k == 0, "n: n={n} d={d} k={k}");
                }
            }
        }
    }
}

#[test]
fn pure_bound_sandwich() {
    for n in 0..=20u64 {
        for d in 1..=20u64 {
            for k in 1..=20u64 {
                let exact = pure_moment_bound(n, d, k).unwrap();
                // the loose bound as an exact rational
                let loose = num_traits::pow(BigRational::new((n + k).into(), (d + n + k - 1).into()), k as usize);
                assert!(exact <= loose, "n={n} d={d} k={k}");
                assert!(exact.to_f64().unwrap() <= pure_moment_bound_loose(n, d, k).unwrap() * (1.0 + 1e-12));
            }
        }
    }
}

#[test]
fn hayashi_moments_under_bound() {
    let (n, d) = (6usize, 3usize);
    let mut g = SeededRng::new(310);
    let u = haar_state(d, &mut g).unwrap();
    let overlaps: Vec<f64> = (0..20_000).map(|_| hayashi_sample(&u, n, &mut g).unwrap().overlap(&u)).collect();
    for k in 1..=4 {
        let xs: Vec<f64> = overlaps.iter().map(|t| t.powi(k)).collect();
        let bound = pure_moment_bound(n as u64, d as u64, k as u64).unwrap().to_f64().unwrap();
        assert!(Summary::of(&xs).at_most(bound, 3.0), "k={k}");
    }
}

fn dense_affinity_moments(p: &Projector, n: usize, runs: u64, seed: u64, kmax: u32) -> Vec<Summary> {
    let r = p.rank() as f64;
    let affs: Vec<f64> = (0..runs)
        .map(|s| {
            let out = pgm_dense_simulate(p, n, &mut SeededRng::with_stream(seed, s)).unwrap();
            out.trace_with(p) / r
        })
        .collect();
    (1..=kmax).map(|k| Summary::of(&affs.iter().map(|a| a.powi(k as i32)).collect::<Vec<_>>())).collect()
}

#[test]
fn full_rank_pgm_meets_averaged_bound() {
    // r = d: the PGM output is P itself and both sides equal 1.
    let mut g = SeededRng::new(311);
    let p = haar_projector(2, 2, &mut g).unwrap();
    for n in 1..=10 {
        for (k, s) in dense_affinity_moments(&p, n, 20, 312, 3).iter().enumerate() {
            let bound = averaged_projector_bound(n as u64, 2, 2, k as u64 + 1).unwrap().to_f64().unwrap();
            assert!(s.at_most(bound + 1e-12, 3.0), "n={n} k={}", k + 1);
        }
    }
}

#[test]
fn rank_one_pgm_meets_averaged_bound() {
    let mut g = SeededRng::new(313);
    let p = haar_projector(2, 1, &mut g).unwrap();
    for n in 1..=4 {
        for (k, s) in dense_affinity_moments(&p, n, 600, 314 + n as u64, 3).iter().enumerate() {
            let bound = averaged_projector_bound(n as u64, 2, 1, k as u64 + 1).unwrap().to_f64().unwrap();
            assert!(s.at_most(bound + 1e-12, 3.0), "n={n} k={}: {} vs {bound}", k + 1, s.mean);
        }
    }
}
