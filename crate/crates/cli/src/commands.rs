use num_traits::ToPrimitive;
use rayon::prelude::*;

use projtomo_core::bootstrap::{
    bootstrap_trials, covering_experiment, BootstrapConfig, BootstrapRow, BuresOracle, CoveringRow,
};
use projtomo_core::bounds::{projector_threshold_exact, pure_moment_bound, pure_threshold_exact};
use projtomo_core::jordan::{blockwise_metrics, jordan_decompose};
use projtomo_core::output::{csv_row, fmt_f64, fmt_rational};
use projtomo_core::pgm::{hayashi_sample, pgm_affinity_bound_check, LearnerKind, LearnerSpec};
use projtomo_core::quantum::{
    affinity, bures_distance, fidelity, haar_projector, haar_state, random_density, trace_distance, DensityMatrix,
};
use projtomo_core::selftest::{criterion_count, run_criterion, Mode, FLOAT_TOL};
use projtomo_core::stats::Summary;
use projtomo_core::wss::{wss_distribution, Spectrum};
use projtomo_core::{Result, SeededRng};

use crate::{
    BootstrapArgs, CoveringArgs, Failure, HayashiArgs, JordanArgs, Learner, LearnerArgs, MetricsArgs, Oracle, PgmArgs,
    SelftestArgs, ThresholdArgs, WssArgs,
};

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn metrics_row(pair: usize, d: usize, r: Option<usize>, seed: u64) -> Result<String> {
    use rand::Rng;
    let mut g = SeededRng::with_stream(seed, pair as u64);
    let (rho, sigma, ka, kb): (DensityMatrix, DensityMatrix, usize, usize) = match r {
        Some(r) => (haar_projector(d, r, &mut g)?.state()?, haar_projector(d, r, &mut g)?.state()?, r, r),
        None => {
            let ka = g.random_range(1..=d);
            let kb = g.random_range(1..=d);
            (random_density(d, ka, &mut g)?, random_density(d, kb, &mut g)?, ka, kb)
        }
    };
    let td = trace_distance(&rho, &sigma)?;
    let f = fidelity(&rho, &sigma)?;
    let b = bures_distance(&rho, &sigma)?;
    let a = affinity(&rho, &sigma)?;
    let s = FLOAT_TOL;
    let fuchs = 1.0 - f <= td + s && td <= (1.0 - f * f).max(0.0).sqrt() + s;
    let bures = 0.5 * b * b <= td + s && td <= b + s;
    let aff = f * f <= a + s && a <= f + s;
    Ok(csv_row([
        pair.to_string(),
        ka.to_string(),
        kb.to_string(),
        fmt_f64(td),
        fmt_f64(f),
        fmt_f64(b),
        fmt_f64(a),
        fuchs.to_string(),
        bures.to_string(),
        aff.to_string(),
    ]))
}

pub fn metrics(a: &MetricsArgs) -> std::result::Result<String, Failure> {
    if a.d == 0 {
        return Err(usage("--d must be at least 1"));
    }
    if let Some(r) = a.r {
        if r == 0 || r > a.d {
            return Err(usage(format!("--r must lie in [1, {}]", a.d)));
        }
    }
    let rows: Vec<String> =
        (0..a.pairs).into_par_iter().map(|i| metrics_row(i, a.d, a.r, a.seed)).collect::<Result<_>>()?;
    let mut out = String::from(
        "pair,rank_a,rank_b,trace_distance,fidelity,bures_distance,affinity,fuchs_ok,bures_ok,affinity_ok\n",
    );
    out.extend(rows);
    Ok(out)
}

pub fn jordan(a: &JordanArgs) -> std::result::Result<String, Failure> {
    let mut g = SeededRng::new(a.seed);
    let p = haar_projector(a.d, a.r, &mut g)?;
    let q = haar_projector(a.d, a.r, &mut g)?;
    let dec = jordan_decompose(&p, &q)?;
    let m = blockwise_metrics(&dec);
    let mut out = String::from("block,omega,sine,omega_sq\n");
    for (i, b) in dec.blocks().iter().enumerate() {
        out += &csv_row([i.to_string(), fmt_f64(b.omega), fmt_f64(b.sine), fmt_f64(b.omega * b.omega)]);
    }
    eprintln!(
        "trace distance {}, fidelity {}, affinity {}",
        fmt_f64(m.trace_distance),
        fmt_f64(m.fidelity),
        fmt_f64(m.affinity)
    );
    Ok(out)
}

pub fn wss(a: &WssArgs) -> std::result::Result<String, Failure> {
    Ok(wss_distribution(a.n, &Spectrum::uniform(a.r, a.d)?)?.to_csv())
}

pub fn threshold(a: &ThresholdArgs) -> std::result::Result<String, Failure> {
    let t = match a.r {
        Some(r) => projector_threshold_exact(a.d, r, &a.epsilon)?,
        None => pure_threshold_exact(a.d, &a.epsilon)?,
    };
    Ok(format!("threshold\n{}\n", fmt_rational(&t)))
}

pub fn pgm_affinity(a: &PgmArgs) -> std::result::Result<String, Failure> {
    let cells: Vec<(usize, usize, usize)> = if a.grid {
        (1..=a.n)
            .flat_map(|n| (1..=a.d).flat_map(move |d| (1..=d).map(move |r| (n, d, r))))
            .filter(|&(_, _, r)| a.r.is_none_or(|want| want == r))
            .collect()
    } else {
        let r = a.r.ok_or_else(|| usage("--r is required without --grid"))?;
        vec![(a.n, a.d, r)]
    };
    let rows: Vec<String> = cells
        .par_iter()
        .map(|&(n, d, r)| {
            let c = pgm_affinity_bound_check(n, d, r)?;
            Ok(csv_row([
                n.to_string(),
                d.to_string(),
                r.to_string(),
                fmt_rational(&c.value),
                fmt_f64(c.value.to_f64().unwrap_or(f64::NAN)),
                fmt_rational(&c.bound),
                c.pass.to_string(),
            ]))
        })
        .collect::<Result<_>>()?;
    let mut out = String::from("n,d,r,affinity,affinity_float,bound,pass\n");
    out.extend(rows);
    Ok(out)
}

pub fn hayashi(a: &HayashiArgs) -> std::result::Result<String, Failure> {
    if a.samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let mut g = SeededRng::new(a.seed);
    let u = haar_state(a.d, &mut g)?;
    let t: Vec<f64> =
        (0..a.samples).map(|_| Ok(hayashi_sample(&u, a.n, &mut g)?.overlap(&u))).collect::<Result<_>>()?;
    let mut out = String::from("k,moment,std_err,bound,bound_float,within_bound\n");
    for k in 1..=a.kmax {
        let s = Summary::of(&t.iter().map(|x| x.powi(k as i32)).collect::<Vec<_>>());
        let bound = pure_moment_bound(a.n as u64, a.d as u64, k)?;
        let bf = bound.to_f64().unwrap_or(f64::NAN);
        out += &csv_row([
            k.to_string(),
            fmt_f64(s.mean),
            fmt_f64(s.std_err),
            fmt_rational(&bound),
            fmt_f64(bf),
            s.at_most(bf, 3.0).to_string(),
        ]);
    }
    Ok(out)
}

fn learner_kind(a: &LearnerArgs) -> LearnerKind {
    match a.learner {
        Learner::AdversarialDiscard => LearnerKind::AdversarialDiscard,
        Learner::UniformTilt => LearnerKind::UniformTilt,
        Learner::ExactOracle => LearnerKind::ExactOracle,
        Learner::Hayashi => LearnerKind::HayashiPure { copies: a.hayashi_copies },
    }
}

pub fn bootstrap(a: &BootstrapArgs) -> std::result::Result<String, Failure> {
    let l = &a.learner;
    let oracle = match a.oracle {
        Oracle::Exact => BuresOracle::ExactRestriction,
        Oracle::Noisy => BuresOracle::Noisy { delta: a.delta },
    };
    let cfg = BootstrapConfig::new(l.d, l.r, l.epsilon, l.alpha, learner_kind(l))?
        .with_oracle(oracle)?
        .with_copy_constant(a.copy_constant)?;
    let rows = bootstrap_trials(&cfg, l.trials, l.seed)?;
    let mut out = String::from(BootstrapRow::HEADER);
    out.extend(rows.iter().map(BootstrapRow::to_csv));
    Ok(out)
}

pub fn covering(a: &CoveringArgs) -> std::result::Result<String, Failure> {
    let l = &a.learner;
    let spec = LearnerSpec::new(learner_kind(l), l.epsilon)?;
    let rows = covering_experiment(&spec, l.d, l.r, l.alpha, l.trials, l.seed)?;
    let mut out = String::from(CoveringRow::HEADER);
    out.extend(rows.iter().map(CoveringRow::to_csv));
    Ok(out)
}

/// CSV of outcomes, and the number of failed criteria. Progress lines go to
/// stderr as each criterion finishes.
pub fn selftest(a: &SelftestArgs) -> (String, usize) {
    let mode = if a.fast { Mode::Fast } else { Mode::Full };
    let mut out = String::from("criterion,name,pass,seconds,limit_seconds\n");
    let mut failed = 0;
    for o in (1..=criterion_count()).filter_map(|id| run_criterion(id, mode)) {
        eprintln!("{}", o.line());
        failed += usize::from(!o.pass);
        out += &csv_row([
            o.id.to_string(),
            o.name.to_string(),
            o.pass.to_string(),
            fmt_f64(o.elapsed.as_secs_f64()),
            o.limit.as_secs().to_string(),
        ]);
    }
    (out, failed)
}
