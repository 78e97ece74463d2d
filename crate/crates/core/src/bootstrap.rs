//! The bootstrapped learner: two Haar-randomized runs of a trace-distance
//! learner, the span of their outputs, a subspace measurement on fresh copies
//! and an in-subspace Bures learner, with every intermediate object recorded.

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::jordan::{aligned_pair, blockwise_metrics, cover_report, jordan_decompose, lift_basis, CoverReport};
use crate::output::{csv_row, fmt_f64};
use crate::pgm::{mock_learner_run, LearnerKind, LearnerSpec};
use crate::quantum::haar::{haar_state_in, haar_unitary};
use crate::quantum::linalg::*;
use crate::quantum::measure::restrict_to_subspace;
use crate::quantum::{bures_distance, haar_projector, DensityMatrix, Projector};
use crate::rng::SeededRng;

/// Singular-value cutoff when orthonormalizing the two learner outputs.
pub const SPAN_CUTOFF: f64 = 1e-8;
/// Slack on the learner's trace-distance budget before it counts as cheating.
pub const BUDGET_SLACK: f64 = 1e-9;
pub const DEFAULT_ALPHA: f64 = 0.2;
pub const DEFAULT_COPY_CONSTANT: f64 = 16.0;
/// Unit vectors sampled per covering trial.
pub const COVERING_PROBES: usize = 200;

/// Stand-in for the in-subspace Bures-distance learner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuresOracle {
    /// Returns `ρ|_R` itself.
    ExactRestriction,
    /// Returns a state at Bures distance `delta` from `ρ|_R`.
    Noisy { delta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    pub d: usize,
    pub r: usize,
    pub epsilon: f64,
    pub alpha: f64,
    pub learner: LearnerSpec,
    /// Copies the trace-distance learner consumes per run; enters only the
    /// copy accounting.
    pub learner_copies: u64,
    /// `c` in the `c·r²/ε²` measurement budget.
    pub copy_constant: f64,
    pub bures_oracle: BuresOracle,
}

impl BootstrapConfig {
    /// Defaults: `c = 16`, exact restriction oracle, and a learner of the
    /// given kind with the same `ε`.
    pub fn new(d: usize, r: usize, epsilon: f64, alpha: f64, kind: LearnerKind) -> Result<Self> {
        let cfg = Self {
            d,
            r,
            epsilon,
            alpha,
            learner: LearnerSpec::new(kind, epsilon)?,
            learner_copies: 0,
            copy_constant: DEFAULT_COPY_CONSTANT,
            bures_oracle: BuresOracle::ExactRestriction,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_oracle(mut self, oracle: BuresOracle) -> Result<Self> {
        self.bures_oracle = oracle;
        self.validate()?;
        Ok(self)
    }

    pub fn with_copy_constant(mut self, c: f64) -> Result<Self> {
        self.copy_constant = c;
        self.validate()?;
        Ok(self)
    }

    pub fn with_learner_copies(mut self, n: u64) -> Self {
        self.learner_copies = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 || self.r > self.d {
            return domain(format!("need 1 <= r <= d, got r={}, d={}", self.r, self.d));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return domain(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !(self.epsilon > 0.0 && self.epsilon < self.alpha) {
            return domain(format!("epsilon must lie in (0, alpha), got {}", self.epsilon));
        }
        if self.copy_constant.is_nan() || self.copy_constant <= 0.0 {
            return domain("copy constant must be positive");
        }
        if let BuresOracle::Noisy { delta } = self.bures_oracle {
            if !(0.0..=2f64.sqrt()).contains(&delta) {
                return domain(format!("noisy oracle delta must lie in [0, sqrt 2], got {delta}"));
            }
        }
        Ok(())
    }

    /// `1 − ε²/α²`.
    pub fn align_threshold(&self) -> f64 {
        1.0 - self.epsilon * self.epsilon / (self.alpha * self.alpha)
    }

    /// `⌈c·r²/ε²⌉` copies measured with `{R, R̄}`.
    pub fn measurement_copies(&self) -> u64 {
        (self.copy_constant * (self.r * self.r) as f64 / (self.epsilon * self.epsilon)).ceil() as u64
    }

    /// `⌈c·r²/(2ε²)⌉` surviving copies the Bures oracle needs.
    pub fn oracle_copies(&self) -> u64 {
        (self.copy_constant * (self.r * self.r) as f64 / (2.0 * self.epsilon * self.epsilon)).ceil() as u64
    }

    /// `2n + ⌈c·r²/ε²⌉`.
    pub fn copies_budget(&self) -> u64 {
        2 * self.learner_copies + self.measurement_copies()
    }
}

#[derive(Debug, Clone)]
pub struct BootstrapTrace {
    pub p_hat_1: Projector,
    pub p_hat_2: Projector,
    pub a1: Projector,
    pub a2: Projector,
    pub b1: Projector,
    pub b2: Projector,
    pub r_proj: Projector,
    pub tr_r_rho: f64,
    pub cover: CoverReport,
    pub robust_cover: bool,
    /// Present only when `B1`, `B2` robustly cover `P`.
    pub lift_min_overlap: Option<f64>,
    pub copies_used: u64,
    pub survivors: u64,
    /// Absent when too few copies survived the subspace measurement.
    pub final_estimate: Option<DensityMatrix>,
    pub final_bures_error: Option<f64>,
}

impl BootstrapTrace {
    pub fn succeeded(&self) -> bool {
        self.final_estimate.is_some()
    }
}

/// Projector onto the span of both frames, rank decided by singular values
/// above [`SPAN_CUTOFF`].
pub fn span_projector(p1: &Projector, p2: &Projector) -> Result<Projector> {
    if p1.dim() != p2.dim() {
        return domain(format!("dimension mismatch: {} vs {}", p1.dim(), p2.dim()));
    }
    let mut cat = ComplexMatrix::zeros(p1.dim(), p1.rank() + p2.rank());
    cat.columns_mut(0, p1.rank()).copy_from(p1.frame());
    cat.columns_mut(p1.rank(), p2.rank()).copy_from(p2.frame());
    Projector::from_spanning(&cat, SPAN_CUTOFF)
}

/// Steps 1–2: conjugate by a Haar `U`, hand the learner the canonical frame of
/// `UPU†`, and undo the rotation on its output.
fn randomized_learner_run(spec: &LearnerSpec, p: &Projector, rng: &mut SeededRng) -> Result<Projector> {
    let u = haar_unitary(p.dim(), rng)?;
    let rotated = Projector::from_matrix(&(&u * p.matrix() * u.adjoint()))?;
    let out = mock_learner_run(spec, &rotated, rng)?;
    let p_hat = out.conjugated(&u.adjoint());
    check_learner_output(spec, p, &p_hat)?;
    Ok(p_hat)
}

/// Rejects a learner output of the wrong rank, or one outside its claimed
/// trace-distance budget when the learner guarantees one.
pub fn check_learner_output(spec: &LearnerSpec, p: &Projector, p_hat: &Projector) -> Result<()> {
    if p_hat.rank() != p.rank() {
        return Err(Error::ProtocolViolation(format!("learner returned rank {} for rank {}", p_hat.rank(), p.rank())));
    }
    if spec.budget_guaranteed() {
        let td = blockwise_metrics(&jordan_decompose(p, p_hat)?).trace_distance;
        if td > spec.epsilon + BUDGET_SLACK {
            return Err(Error::ProtocolViolation(format!("learner error {td} exceeds its budget {}", spec.epsilon)));
        }
    }
    Ok(())
}

/// `ρ` tilted inside its eigenbasis: each eigenvector `e_j` becomes
/// `cos θ e_j + sin θ g_j` with orthonormal `g_j ⊥ supp(ρ)`, taken inside
/// `supp(R)` when there is room. Bures distance to `ρ` is `√(2(1 − cos θ))`.
fn bures_perturbation(
    rho: &DensityMatrix,
    r_proj: &Projector,
    delta: f64,
    rng: &mut SeededRng,
) -> Result<DensityMatrix> {
    if delta == 0.0 {
        return Ok(rho.clone());
    }
    let eig = eigh(rho.matrix());
    let d = rho.dim();
    let support: Vec<usize> = (0..d).filter(|&k| eig.values[k] > CLIP_TOL).collect();
    let k = support.len();
    let e = ComplexMatrix::from_fn(d, k, |i, j| eig.vectors[(i, support[j])]);
    let in_r = r_proj.frame() * complement_frame(&(r_proj.frame().adjoint() * &e));
    let pool = if in_r.ncols() >= k { in_r } else { complement_frame(&e) };
    if pool.ncols() < k {
        return domain("no room to perturb a state of this rank");
    }
    let g = &pool * haar_unitary(pool.ncols(), rng)?.columns(0, k);
    let cos = 1.0 - delta * delta / 2.0;
    let sin = (1.0 - cos * cos).max(0.0).sqrt();
    let mut out = ComplexMatrix::zeros(d, d);
    for (j, &s) in support.iter().enumerate() {
        let f = e.column(j) * c64(cos, 0.0) + g.column(j) * c64(sin, 0.0);
        out += &f * f.adjoint() * c64(eig.values[s], 0.0);
    }
    DensityMatrix::new(hermitian_part(&out).unscale(trace(&out).re))
}

/// One end-to-end run of the bootstrapped learner on `ρ = P/r`.
pub fn run_bootstrap(cfg: &BootstrapConfig, p: &Projector, rng: &mut SeededRng) -> Result<BootstrapTrace> {
    cfg.validate()?;
    if p.dim() != cfg.d || p.rank() != cfg.r {
        return domain(format!("projector has d={}, r={}; config expects d={}, r={}", p.dim(), p.rank(), cfg.d, cfg.r));
    }
    let p_hat_1 = randomized_learner_run(&cfg.learner, p, rng)?;
    let p_hat_2 = randomized_learner_run(&cfg.learner, p, rng)?;
    let r_proj = span_projector(&p_hat_1, &p_hat_2)?;

    let rho = p.state()?;
    let tr_r_rho = (p.trace_with(&r_proj) / cfg.r as f64).clamp(0.0, 1.0);
    let m = cfg.measurement_copies();
    let survivors = Binomial::new(m, tr_r_rho).map_err(|e| Error::Domain(e.to_string()))?.sample(rng);
    let copies_used = 2 * cfg.learner_copies + m;

    let (final_estimate, final_bures_error) = if survivors >= cfg.oracle_copies() {
        let (restricted, _) = restrict_to_subspace(&rho, &r_proj)?;
        let estimate = match cfg.bures_oracle {
            BuresOracle::ExactRestriction => restricted,
            BuresOracle::Noisy { delta } => bures_perturbation(&restricted, &r_proj, delta, rng)?,
        };
        let err = bures_distance(&rho, &estimate)?;
        (Some(estimate), Some(err))
    } else {
        (None, None)
    };

    let thr = cfg.align_threshold();
    let x1 = aligned_pair(&p_hat_1, p, thr)?;
    let x2 = aligned_pair(&p_hat_2, p, thr)?;
    let cover = cover_report(&x1.second, &x2.second, p)?;
    let lift_min_overlap = if cover.robust() {
        Some(lift_basis(p, &x1.first, &x1.second, &x2.first, &x2.second)?.min_overlap())
    } else {
        None
    };

    Ok(BootstrapTrace {
        p_hat_1,
        p_hat_2,
        a1: x1.first,
        a2: x2.first,
        b1: x1.second,
        b2: x2.second,
        r_proj,
        tr_r_rho,
        robust_cover: cover.robust(),
        cover,
        lift_min_overlap,
        copies_used,
        survivors,
        final_estimate,
        final_bures_error,
    })
}

/// Scalar summary of one bootstrap trial.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapRow {
    pub trial: usize,
    pub rank_a1: usize,
    pub rank_a2: usize,
    pub rank_b1: usize,
    pub rank_b2: usize,
    pub rank_r: usize,
    pub tr_r_rho: f64,
    pub robust_cover: bool,
    pub lift_min_overlap: Option<f64>,
    pub copies_used: u64,
    pub copies_budget: u64,
    pub survivors: u64,
    pub success: bool,
    pub final_bures_error: Option<f64>,
}

impl BootstrapRow {
    pub const HEADER: &'static str = "trial,rank_a1,rank_a2,rank_b1,rank_b2,rank_r,tr_r_rho,robust_cover,lift_min_overlap,copies_used,copies_budget,survivors,success,final_bures_error\n";

    fn from_trace(trial: usize, cfg: &BootstrapConfig, t: &BootstrapTrace) -> Self {
        Self {
            trial,
            rank_a1: t.a1.rank(),
            rank_a2: t.a2.rank(),
            rank_b1: t.b1.rank(),
            rank_b2: t.b2.rank(),
            rank_r: t.r_proj.rank(),
            tr_r_rho: t.tr_r_rho,
            robust_cover: t.robust_cover,
            lift_min_overlap: t.lift_min_overlap,
            copies_used: t.copies_used,
            copies_budget: cfg.copies_budget(),
            survivors: t.survivors,
            success: t.succeeded(),
            final_bures_error: t.final_bures_error,
        }
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        csv_row([
            self.trial.to_string(),
            self.rank_a1.to_string(),
            self.rank_a2.to_string(),
            self.rank_b1.to_string(),
            self.rank_b2.to_string(),
            self.rank_r.to_string(),
            fmt_f64(self.tr_r_rho),
            self.robust_cover.to_string(),
            opt(self.lift_min_overlap),
            self.copies_used.to_string(),
            self.copies_budget.to_string(),
            self.survivors.to_string(),
            self.success.to_string(),
            opt(self.final_bures_error),
        ])
    }
}

/// Independent bootstrap trials, each on a fresh Haar projector drawn from
/// stream `trial` of `seed`. Runs in parallel; rows come back in trial order.
pub fn bootstrap_trials(cfg: &BootstrapConfig, trials: usize, seed: u64) -> Result<Vec<BootstrapRow>> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SeededRng::with_stream(seed, t as u64);
            let p = haar_projector(cfg.d, cfg.r, &mut rng)?;
            let trace = run_bootstrap(cfg, &p, &mut rng)?;
            Ok(BootstrapRow::from_trace(t, cfg, &trace))
        })
        .collect()
}

/// One covering trial: whether `B1`, `B2` robustly cover `P`, and how well
/// `B2` catches random directions in `P ⊖ B1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringRow {
    pub trial: usize,
    pub rank_b1: usize,
    pub rank_b2: usize,
    pub rank_ok: bool,
    pub max_pair_overlap_sq: f64,
    pub overlap_ok: bool,
    pub robust_cover: bool,
    /// Minimum of `⟨u|B2|u⟩` over sampled unit vectors `u ∈ supp(P − B1)`;
    /// absent when `B1 = P`.
    pub min_probe: Option<f64>,
}

impl CoveringRow {
    pub const HEADER: &'static str =
        "trial,rank_b1,rank_b2,rank_ok,max_pair_overlap_sq,overlap_ok,robust_cover,min_probe\n";

    pub fn to_csv(&self) -> String {
        csv_row([
            self.trial.to_string(),
            self.rank_b1.to_string(),
            self.rank_b2.to_string(),
            self.rank_ok.to_string(),
            fmt_f64(self.max_pair_overlap_sq),
            self.overlap_ok.to_string(),
            self.robust_cover.to_string(),
            self.min_probe.map(fmt_f64).unwrap_or_default(),
        ])
    }
}

fn covering_trial(spec: &LearnerSpec, d: usize, r: usize, alpha: f64, trial: usize, seed: u64) -> Result<CoveringRow> {
    let mut rng = SeededRng::with_stream(seed, trial as u64);
    let p = haar_projector(d, r, &mut rng)?;
    let p_hat_1 = randomized_learner_run(spec, &p, &mut rng)?;
    let p_hat_2 = randomized_learner_run(spec, &p, &mut rng)?;
    let thr = 1.0 - spec.epsilon * spec.epsilon / (alpha * alpha);
    let b1 = aligned_pair(&p_hat_1, &p, thr)?.second;
    let b2 = aligned_pair(&p_hat_2, &p, thr)?.second;
    let cover = cover_report(&b1, &b2, &p)?;
    // supp(P) ⊖ supp(B1)
    let rest = p.frame() * complement_frame(&(p.frame().adjoint() * b1.frame()));
    let min_probe = if rest.ncols() == 0 {
        None
    } else {
        let mut lo = f64::INFINITY;
        for _ in 0..COVERING_PROBES {
            let u = haar_state_in(&rest, &mut rng)?;
            lo = lo.min(b2.expectation(u.vector()));
        }
        Some(lo)
    };
    Ok(CoveringRow {
        trial,
        rank_b1: b1.rank(),
        rank_b2: b2.rank(),
        rank_ok: cover.rank_ok,
        max_pair_overlap_sq: cover.max_pair_overlap_sq,
        overlap_ok: cover.overlap_ok(),
        robust_cover: cover.robust(),
        min_probe,
    })
}

/// Per-trial covering records for the given learner, in trial order.
pub fn covering_experiment(
    spec: &LearnerSpec,
    d: usize,
    r: usize,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<CoveringRow>> {
    if r == 0 || r > d {
        return domain(format!("need 1 <= r <= d, got r={r}, d={d}"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    (0..trials).into_par_iter().map(|t| covering_trial(spec, d, r, alpha, t, seed)).collect()
}
