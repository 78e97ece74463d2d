//! The pretty good measurement for projector states: exact expected
//! affinity, the pure-state (Hayashi) sampler, a dense Metropolis reference
//! for small systems, and the mock learners driven by the bootstrap.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use crate::error::{capacity, domain, Result};
use crate::jordan::with_principal_angles;
use crate::quantum::haar::{haar_state_in, haar_unitary};
use crate::quantum::linalg::*;
use crate::quantum::{Projector, PureState};
use crate::rep_theory::{num_ssyt, num_syt, partitions_of, pieri_expand, Partition};
use crate::rng::SeededRng;
use crate::wss::{isotypic_projector, wss_distribution, wss_sample, Spectrum};

/// Largest `n` accepted by [`pgm_expected_affinity`].
pub const PGM_MAX_N: usize = 100;
/// Cap on `d^n` for [`pgm_dense_simulate`].
pub const DENSE_PGM_LIMIT: usize = 1024;
/// Largest `n` for the dense path; the isotypic projector costs `n!·dⁿ`.
pub const DENSE_PGM_MAX_N: usize = 8;
/// Metropolis burn-in steps for the dense reference.
pub const METROPOLIS_BURN_IN: usize = 200;
/// Scale of the Hermitian generator in the Metropolis proposal `exp(iH)·U`.
pub const METROPOLIS_STEP: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LearnerKind {
    /// Pure-state PGM on `copies` copies; only defined for rank 1, and its
    /// error is random, so the budget is not guaranteed.
    HayashiPure {
        copies: usize,
    },
    /// Replaces `⌈εr⌉` directions of the stored frame by orthogonal ones.
    AdversarialDiscard,
    /// Tilts every direction by the same angle, `sin θ = ε`.
    UniformTilt,
    ExactOracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerSpec {
    pub kind: LearnerKind,
    pub epsilon: f64,
}

impl LearnerSpec {
    pub fn new(kind: LearnerKind, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return domain(format!("learner epsilon must lie in (0, 1], got {epsilon}"));
        }
        if let LearnerKind::HayashiPure { copies: 0 } = kind {
            return domain("Hayashi learner needs at least one copy");
        }
        Ok(Self { kind, epsilon })
    }

    /// Whether every output is within `epsilon` in trace distance by construction.
    pub fn budget_guaranteed(&self) -> bool {
        !matches!(self.kind, LearnerKind::HayashiPure { .. })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            LearnerKind::HayashiPure { .. } => "hayashi_pure",
            LearnerKind::AdversarialDiscard => "adversarial_discard",
            LearnerKind::UniformTilt => "uniform_tilt",
            LearnerKind::ExactOracle => "exact_oracle",
        }
    }
}

/// Number of corrupted directions, `⌈εr⌉`, robust to `εr` landing a hair
/// above an integer in floating point.
pub fn corrupted_blocks(epsilon: f64, r: usize) -> usize {
    let x = epsilon * r as f64;
    let rounded = x.round();
    if (x - rounded).abs() < 1e-9 {
        rounded as usize
    } else {
        x.ceil() as usize
    }
}

/// Runs a mock learner on the projector `P` (not on copies of `P/r`).
pub fn mock_learner_run(spec: &LearnerSpec, p: &Projector, rng: &mut SeededRng) -> Result<Projector> {
    let r = p.rank();
    match spec.kind {
        LearnerKind::ExactOracle => Ok(p.clone()),
        LearnerKind::AdversarialDiscard => {
            let m = corrupted_blocks(spec.epsilon, r);
            if m > r {
                return domain(format!("cannot corrupt {m} of {r} directions"));
            }
            // ⌊εr⌋ directions are swapped out entirely; when εr is fractional
            // one more is tilted so that the blockwise distance is exactly ε.
            let x = spec.epsilon * r as f64;
            let full = if (x - m as f64).abs() < 1e-9 { m } else { m - 1 };
            let mut angles = vec![0.0; r];
            for a in angles.iter_mut().take(full) {
                *a = std::f64::consts::FRAC_PI_2;
            }
            if full < m {
                angles[full] = (x - full as f64).asin();
            }
            with_principal_angles(p, &angles, rng)
        }
        LearnerKind::UniformTilt => {
            let theta = spec.epsilon.asin();
            with_principal_angles(p, &vec![theta; r], rng)
        }
        LearnerKind::HayashiPure { copies } => {
            if r != 1 {
                return domain(format!("Hayashi learner is for rank 1, got rank {r}"));
            }
            let u_hat = hayashi_sample(&p.column(0), copies, rng)?;
            Projector::from_states(p.dim(), &[u_hat])
        }
    }
}

/// Output of the pure-state PGM on `u^{⊗n}`: overlap `t = |⟨û|u⟩|²` drawn
/// from the density `∝ tⁿ(1−t)^{d−2}`, i.e. `Beta(n+1, d−1)`, then a Haar
/// direction orthogonal to `u` and a uniform global phase.
pub fn hayashi_sample(u: &PureState, n: usize, rng: &mut SeededRng) -> Result<PureState> {
    let d = u.dim();
    if d < 2 {
        return domain("Hayashi sampling needs d >= 2");
    }
    if n == 0 {
        return domain("Hayashi sampling needs n >= 1");
    }
    let beta = Beta::new((n + 1) as f64, (d - 1) as f64).map_err(|e| crate::Error::Domain(e.to_string()))?;
    let t: f64 = beta.sample(rng);
    let comp = complement_frame(&ComplexMatrix::from_column_slice(d, 1, u.vector().as_slice()));
    let w = haar_state_in(&comp, rng)?;
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    let v = (u.vector() * c64(t.sqrt(), 0.0) + w.vector() * c64((1.0 - t).max(0.0).sqrt(), 0.0))
        * C64::from_polar(1.0, phi);
    PureState::normalized(v)
}

fn ratio(a: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(a.clone().into(), b.clone().into())
}

/// Exact `E[Aff(ρ̂, ρ)]` of the PGM on `n` copies of a Haar-random rank-`r`
/// projector state in dimension `d`:
/// `r^{−(n+1)} Σ_λ (s_λ(1^d)/s_λ(1^r))·dim(λ)·Σ_i s_{λ+e_i}(1^r)²/s_{λ+e_i}(1^d)`.
pub fn pgm_expected_affinity(n: usize, d: usize, r: usize) -> Result<BigRational> {
    if r == 0 || r > d {
        return domain(format!("need 1 <= r <= d, got r={r}, d={d}"));
    }
    if n > PGM_MAX_N {
        return capacity(format!("n = {n} exceeds the closed-form limit {PGM_MAX_N}"));
    }
    let mut total = BigRational::zero();
    for lam in partitions_of(n, d) {
        let s_r = num_ssyt(&lam, r);
        if s_r.is_zero() {
            continue;
        }
        let s_d = num_ssyt(&lam, d);
        let inner: BigRational = pieri_expand(&lam, d)
            .iter()
            .map(|tau| {
                let t_r = num_ssyt(tau, r);
                ratio(&(&t_r * &t_r), &num_ssyt(tau, d))
            })
            .sum();
        total += ratio(&s_d, &s_r) * BigRational::from_integer(num_syt(&lam).into()) * inner;
    }
    let scale = BigUint::from(r).pow(n as u32 + 1);
    Ok(total / BigRational::from_integer(scale.into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AffinityBoundCheck {
    pub value: BigRational,
    /// `1 − 3rd/(2n)`.
    pub bound: BigRational,
    pub pass: bool,
}

pub fn pgm_affinity_bound_check(n: usize, d: usize, r: usize) -> Result<AffinityBoundCheck> {
    if n == 0 {
        return domain("the bound needs n >= 1");
    }
    let value = pgm_expected_affinity(n, d, r)?;
    let bound = BigRational::one() - BigRational::new(BigInt::from(3 * r * d), BigInt::from(2 * n));
    let pass = value >= bound && value <= BigRational::one();
    Ok(AffinityBoundCheck { value, bound, pass })
}

/// `tr(Π_λ (UQU†·P)^{⊗n})` with the dense isotypic projector.
fn dense_density(pi: &ComplexMatrix, x: &ComplexMatrix, n: usize) -> f64 {
    let big = crate::quantum::symmetric::tensor_power(x, n);
    trace_of_product(pi, &big).re.max(0.0)
}

fn random_hermitian(d: usize, scale: f64, rng: &mut SeededRng) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        let x: f64 = rng.sample(StandardNormal);
        h[(i, i)] = c64(scale * x, 0.0);
        for j in (i + 1)..d {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            let z = c64(a, b) * (scale / std::f64::consts::SQRT_2);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

fn expi(h: &ComplexMatrix) -> ComplexMatrix {
    let eig = eigh(h);
    let d = h.nrows();
    let phases = ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
        d,
        eig.values.iter().map(|&x| C64::from_polar(1.0, x)),
    ));
    &eig.vectors * phases * eig.vectors.adjoint()
}

/// One draw from the PGM on `n` copies of `P/r`: weak Schur sampling picks
/// `λ`, then Metropolis over `U(d)` targets the density `∝ tr(ν_λ(UQU†)ν_λ(P))`
/// relative to Haar measure. Returns `UQU†` with `Q` the coordinate projector.
pub fn pgm_dense_simulate(p: &Projector, n: usize, rng: &mut SeededRng) -> Result<Projector> {
    let (d, r) = (p.dim(), p.rank());
    if r == 0 {
        return domain("PGM needs rank >= 1");
    }
    let lam = wss_sample(&wss_distribution(n, &Spectrum::uniform(r, d)?)?, rng);
    pgm_dense_simulate_given(p, &lam, rng)
}

/// The in-irrep step of [`pgm_dense_simulate`] for a fixed outcome `λ`.
pub fn pgm_dense_simulate_given(p: &Projector, lam: &Partition, rng: &mut SeededRng) -> Result<Projector> {
    let (d, r, n) = (p.dim(), p.rank(), lam.size());
    if r == 0 {
        return domain("PGM needs rank >= 1");
    }
    if r == d {
        return Projector::identity(d);
    }
    if n > DENSE_PGM_MAX_N {
        return capacity(format!("n = {n} exceeds the dense PGM limit {DENSE_PGM_MAX_N}"));
    }
    let pi = isotypic_projector(lam, d, DENSE_PGM_LIMIT)?;
    let q = Projector::coordinate(d, r)?;
    let pm = p.matrix();
    let density = |u: &ComplexMatrix| {
        let x = q.conjugated(u).matrix() * &pm;
        dense_density(&pi, &x, n)
    };
    let mut u = haar_unitary(d, rng)?;
    let mut f = density(&u);
    for _ in 0..METROPOLIS_BURN_IN {
        let prop = expi(&random_hermitian(d, METROPOLIS_STEP, rng)) * &u;
        let f_prop = density(&prop);
        let accept = f <= 0.0 || rng.random::<f64>() * f < f_prop;
        if accept {
            u = prop;
            f = f_prop;
        }
    }
    Ok(q.conjugated(&u))
}
