//! The acceptance suite as a library: each criterion is a closed check with
//! its own seed, grid and wall-time limit. `Mode::Fast` shrinks the Monte
//! Carlo sample sizes and trial counts but keeps every exact grid.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::bootstrap::{bootstrap_trials, BootstrapConfig};
use crate::bounds::{projector_threshold_exact, pure_moment_bound, pure_threshold_exact};
use crate::jordan::{blockwise_metrics, jordan_decompose};
use crate::pgm::{hayashi_sample, pgm_affinity_bound_check, pgm_expected_affinity, LearnerKind};
use crate::quantum::linalg::{trace, ComplexMatrix};
use crate::quantum::symmetric::tensor_power;
use crate::quantum::{
    affinity, bures_distance, fidelity, haar_projector, haar_state, random_density, sym_dimension, sym_projector,
    trace_distance, DensityMatrix, C64,
};
use crate::rep_theory::{content_ratio_product, lr_admissible, partitions_of, Partition};
use crate::stats::Summary;
use crate::wss::{wss_distribution, Spectrum};
use crate::SeededRng;

/// Tolerance for floating-point identities and inequalities.
pub const FLOAT_TOL: f64 = 1e-8;
/// Monte-Carlo agreement is judged at this many standard errors.
pub const SE_MULTIPLE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Fast,
}

impl Mode {
    fn pick(self, full: usize, fast: usize) -> usize {
        match self {
            Mode::Full => full,
            Mode::Fast => fast,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    /// The check itself passed and it finished within `limit`.
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {}: {} ({:.2}s, limit {}s)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

type Check = fn(Mode) -> Verdict;

const CRITERIA: [(&str, Check, u64); 11] = [
    ("exact pure-moment identity", pure_moment_identity, 1),
    ("PGM closed form at r=1", pgm_rank_one_closed_form, 30),
    ("PGM affinity lower bound", pgm_lower_bound_grid, 120),
    ("Hayashi Monte-Carlo moments", hayashi_monte_carlo, 60),
    ("WSS exactness", wss_exactness, 30),
    ("Jordan equivalence oracle", jordan_equivalence, 60),
    ("metric inequalities", metric_inequalities, 120),
    ("symmetric subspace", symmetric_subspace, 60),
    ("bootstrap overlap", bootstrap_overlap, 300),
    ("threshold arithmetic", threshold_arithmetic, 1),
    ("content-ratio maximality", content_ratio_maximality, 60),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, mode: Mode) -> Option<CriterionOutcome> {
    let (name, check, secs) = *CRITERIA.get(id.checked_sub(1)?)?;
    let limit = Duration::from_secs(secs);
    let start = Instant::now();
    let v = check(mode);
    let elapsed = start.elapsed();
    Some(CriterionOutcome { id, name, pass: v.pass && elapsed <= limit, detail: v.detail, elapsed, limit })
}

/// Runs every criterion in order, sequentially so that timings are honest.
pub fn run_all(mode: Mode) -> Vec<CriterionOutcome> {
    (1..=CRITERIA.len()).filter_map(|id| run_criterion(id, mode)).collect()
}

fn pure_moment_identity(_: Mode) -> Verdict {
    let mut bad = Vec::new();
    for n in 0..=50i64 {
        for d in 1..=50i64 {
            if pure_moment_bound(n as u64, d as u64, 1).ok() != Some(q(n + 1, n + d)) {
                bad.push((n, d));
            }
        }
    }
    verdict(bad.is_empty(), format!("51x50 cells, mismatches {bad:?}"))
}

fn pgm_rank_one_closed_form(_: Mode) -> Verdict {
    let mut bad = Vec::new();
    for n in 1..=8i64 {
        for d in 1..=6i64 {
            if pgm_expected_affinity(n as usize, d as usize, 1).ok() != Some(q(n + 1, n + d)) {
                bad.push((n, d));
            }
        }
    }
    verdict(bad.is_empty(), format!("48 cells, mismatches {bad:?}"))
}

fn pgm_lower_bound_grid(_: Mode) -> Verdict {
    let mut bad = Vec::new();
    let mut cells = 0;
    for n in 1..=40 {
        for d in 1..=5 {
            for r in 1..=d {
                cells += 1;
                let ok = match pgm_affinity_bound_check(n, d, r) {
                    Ok(c) => c.pass && (r < d || c.value.is_one()),
                    Err(_) => false,
                };
                if !ok {
                    bad.push((n, d, r));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{cells} cells, failures {bad:?}"))
}

fn hayashi_monte_carlo(mode: Mode) -> Verdict {
    let (n, d) = (10usize, 4usize);
    let samples = mode.pick(100_000, 20_000);
    let mut g = SeededRng::new(4);
    let Ok(u) = haar_state(d, &mut g) else {
        return verdict(false, "state sampling failed");
    };
    let mut t = Vec::with_capacity(samples);
    for _ in 0..samples {
        match hayashi_sample(&u, n, &mut g) {
            Ok(v) => t.push(v.overlap(&u)),
            Err(e) => return verdict(false, e.to_string()),
        }
    }
    let target = 11.0 / 14.0;
    let mean = Summary::of(&t);
    let mut pass = mean.within(target, SE_MULTIPLE);
    let mut detail = format!("{samples} samples, mean {:.6} ± {:.6} vs 11/14 = {target:.6}", mean.mean, mean.std_err);
    for k in 1..=4 {
        let s = Summary::of(&t.iter().map(|x| x.powi(k)).collect::<Vec<_>>());
        let bound = pure_moment_bound(n as u64, d as u64, k as u64).ok().and_then(|b| b.to_f64()).unwrap_or(f64::NAN);
        pass &= s.at_most(bound, SE_MULTIPLE);
        detail += &format!("; k={k} {:.6} vs {bound:.6}", s.mean);
    }
    verdict(pass, detail)
}

fn wss_exactness(_: Mode) -> Verdict {
    let mut bad = Vec::new();
    let mut tables = 0;
    for n in 0..=10 {
        for d in 1..=6 {
            for r in 1..=d.min(4) {
                tables += 1;
                let ok = Spectrum::uniform(r, d)
                    .and_then(|s| wss_distribution(n, &s))
                    .map(|dist| {
                        dist.total().is_one() && dist.entries().iter().all(|(l, p)| l.len() <= r || p.is_zero())
                    })
                    .unwrap_or(false);
                if !ok {
                    bad.push((n, r, d));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{tables} tables, failures {bad:?}"))
}

fn jordan_equivalence(mode: Mode) -> Verdict {
    let pairs = mode.pick(500, 100);
    let mut worst = 0.0f64;
    for t in 0..pairs as u64 {
        let mut g = SeededRng::with_stream(6, t);
        let d = g.random_range(2..=16usize);
        let r = g.random_range(1..=5usize.min(d));
        let dev = (|| -> crate::Result<f64> {
            let p = haar_projector(d, r, &mut g)?;
            let qq = haar_projector(d, r, &mut g)?;
            let m = blockwise_metrics(&jordan_decompose(&p, &qq)?);
            let (ps, qs) = (p.state()?, qq.state()?);
            Ok((m.trace_distance - trace_distance(&ps, &qs)?)
                .abs()
                .max((m.fidelity - fidelity(&ps, &qs)?).abs())
                .max((m.affinity - affinity(&ps, &qs)?).abs()))
        })();
        worst = worst.max(dev.unwrap_or(f64::INFINITY));
    }
    verdict(worst <= FLOAT_TOL, format!("{pairs} pairs, max deviation {worst:.3e}"))
}

fn inequalities_hold(rho: &DensityMatrix, sigma: &DensityMatrix) -> crate::Result<bool> {
    let td = trace_distance(rho, sigma)?;
    let f = fidelity(rho, sigma)?;
    let b = bures_distance(rho, sigma)?;
    let a = affinity(rho, sigma)?;
    let s = FLOAT_TOL;
    Ok(1.0 - f <= td + s
        && td <= (1.0 - f * f).max(0.0).sqrt() + s
        && 0.5 * b * b <= td + s
        && td <= b + s
        && f * f <= a + s
        && a <= f + s)
}

fn metric_inequalities(mode: Mode) -> Verdict {
    let pairs = mode.pick(10_000, 2_000);
    let mut violations = 0;
    for t in 0..pairs as u64 {
        let mut g = SeededRng::with_stream(7, t);
        let d = g.random_range(2..=6usize);
        let ok = (|| -> crate::Result<bool> {
            // even trials: mixed states of random rank; odd: projector states
            let (rho, sigma) = if t % 2 == 0 {
                let k1 = g.random_range(1..=d);
                let k2 = g.random_range(1..=d);
                (random_density(d, k1, &mut g)?, random_density(d, k2, &mut g)?)
            } else {
                let r = g.random_range(1..=d);
                (haar_projector(d, r, &mut g)?.state()?, haar_projector(d, r, &mut g)?.state()?)
            };
            inequalities_hold(&rho, &sigma)
        })();
        if !ok.unwrap_or(false) {
            violations += 1;
        }
    }
    verdict(violations == 0, format!("{pairs} pairs, {violations} violations"))
}

fn symmetric_subspace(mode: Mode) -> Verdict {
    let mut bad = Vec::new();
    for n in 1..=5u64 {
        for d in 1..=5u64 {
            let ok = sym_projector(n as usize, d as usize)
                .map(|pi| {
                    let t = trace(&pi).re;
                    (t - t.round()).abs() <= 1e-9 && BigUint::from(t.round() as u64) == sym_dimension(n, d)
                })
                .unwrap_or(false);
            if !ok {
                bad.push((n, d));
            }
        }
    }
    // E[ψ^{⊗2}] over Haar ψ in C² equals Π_sym / 3, entry by entry
    let samples = mode.pick(20_000, 5_000);
    let mut g = SeededRng::new(8);
    let mut draws: Vec<ComplexMatrix> = Vec::with_capacity(samples);
    for _ in 0..samples {
        match haar_state(2, &mut g) {
            Ok(psi) => draws.push(tensor_power(&psi.outer(), 2)),
            Err(e) => return verdict(false, e.to_string()),
        }
    }
    let target = match sym_projector(2, 2) {
        Ok(pi) => pi.unscale(3.0),
        Err(e) => return verdict(false, e.to_string()),
    };
    let parts: [fn(C64) -> f64; 2] = [|z| z.re, |z| z.im];
    let mut off = 0;
    for i in 0..4 {
        for j in 0..4 {
            for pick in parts {
                let s = Summary::of(&draws.iter().map(|m| pick(m[(i, j)])).collect::<Vec<_>>());
                let want = pick(target[(i, j)]);
                // entries that vanish identically have zero spread
                let exact = s.std_err < 1e-15 && (s.mean - want).abs() < 1e-12;
                if !(exact || s.within(want, SE_MULTIPLE)) {
                    off += 1;
                }
            }
        }
    }
    verdict(
        bad.is_empty() && off == 0,
        format!("trace mismatches {bad:?}; {samples} Haar samples, entries outside 3 s.e.: {off}/32"),
    )
}

fn bootstrap_overlap(mode: Mode) -> Verdict {
    let (d, r, eps, alpha) = (60, 20, 0.1, 0.3);
    let trials = mode.pick(50, 10);
    // 47 of 50, scaled
    let needed = (47 * trials).div_ceil(50);
    let rows = match BootstrapConfig::new(d, r, eps, alpha, LearnerKind::AdversarialDiscard)
        .and_then(|cfg| bootstrap_trials(&cfg, trials, 9))
    {
        Ok(rows) => rows,
        Err(e) => return verdict(false, e.to_string()),
    };
    let target = 1.0 - 3.0 * eps * eps / (alpha * alpha);
    let hits = rows.iter().filter(|x| x.tr_r_rho >= target).count();
    let strict = rows.iter().filter(|x| x.tr_r_rho >= 0.9667).count();
    let survivors: Vec<_> = rows.iter().filter(|x| x.success).collect();
    let bures_ok = survivors.iter().all(|x| {
        let bound = (2.0 * (1.0 - x.tr_r_rho.sqrt())).max(0.0).sqrt();
        x.final_bures_error.is_some_and(|e| e <= bound + FLOAT_TOL)
    });
    let min_tr = rows.iter().map(|x| x.tr_r_rho).fold(1.0, f64::min);
    verdict(
        hits >= needed && bures_ok,
        format!(
            "tr(R rho) >= {target:.4} in {hits}/{trials} (need {needed}; >= 0.9667 in {strict}/{trials}; min {min_tr:.6}); \
             Bures bound holds in all {} surviving trials: {bures_ok}",
            survivors.len()
        ),
    )
}

fn threshold_arithmetic(_: Mode) -> Verdict {
    match (pure_threshold_exact(64, &q(1, 8)), projector_threshold_exact(4, 2, &q(1, 80))) {
        (Ok(a), Ok(b)) => {
            let pass = a == q(64, 1) && b == q(400, 1);
            verdict(pass, format!("pure {a}, projector {b}"))
        }
        (a, b) => verdict(false, format!("{a:?} {b:?}")),
    }
}

/// `λ` with `k` boxes appended to its first row.
fn first_row_insertion(lam: &Partition, k: usize) -> Partition {
    let mut parts = lam.parts().to_vec();
    if parts.is_empty() {
        parts.push(0);
    }
    parts[0] += k;
    Partition::new(parts).expect("first row stays longest")
}

fn content_ratio_maximality(_: Mode) -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for size in 0..=6 {
        for d in 2..=5 {
            for r in 1..d {
                // s_λ(1^r) must be nonzero, so ℓ(λ) ≤ r
                for lam in partitions_of(size, r) {
                    for k in 1..=3 {
                        let first = first_row_insertion(&lam, k);
                        let Ok(best) = content_ratio_product(&lam, &first, r, d) else {
                            bad.push(format!("{lam}: first-row product failed"));
                            continue;
                        };
                        let shapes = partitions_of(k, k);
                        for tau in partitions_of(size + k, d) {
                            if !lam.is_subset_of(&tau) || !shapes.iter().any(|mu| lr_admissible(&lam, mu, &tau, d)) {
                                continue;
                            }
                            checked += 1;
                            match content_ratio_product(&lam, &tau, r, d) {
                                Ok(v) if v <= best => {}
                                _ => bad.push(format!("{lam}->{tau} r={r} d={d}")),
                            }
                        }
                    }
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} (lambda, tau, r, d) cases, counterexamples {bad:?}"))
}
