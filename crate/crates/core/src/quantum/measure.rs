use rand::Rng;

use super::linalg::*;
use super::state::{DensityMatrix, Projector};
use crate::error::{domain, Error, Result};
use crate::rng::SeededRng;

/// Restrictions with `tr(Rρ)` at or below this are rejected as degenerate.
pub const RESTRICTION_TOL: f64 = 1e-12;

/// Eigenvalues closer than this are treated as tied when rounding.
const TIE_TOL: f64 = 1e-10;

/// Sort key for an eigenvector inside a degenerate eigenspace: entries after
/// fixing the global phase, rounded to a 1e-8 grid.
fn tie_key(v: &ComplexVector) -> Vec<(i64, i64)> {
    let phase = v.iter().find(|z| z.norm() > 1e-8).map(|z| z.conj() / z.norm()).unwrap_or(c64(1.0, 0.0));
    v.iter()
        .map(|z| {
            let w = z * phase;
            ((w.re * 1e8).round() as i64, (w.im * 1e8).round() as i64)
        })
        .collect()
}

/// Projector onto the eigenvectors of the `r` largest eigenvalues of `rho_hat`.
///
/// Eigenvalues are sorted descending; within a run of eigenvalues tied to
/// 1e-10 the eigenvectors are ordered lexicographically by [`tie_key`]
/// (descending), which makes the degenerate case reproducible.
pub fn round_to_projector_state(rho_hat: &DensityMatrix, r: usize) -> Result<Projector> {
    let d = rho_hat.dim();
    if r > d {
        return domain(format!("rank {r} exceeds dimension {d}"));
    }
    let eig = eigh(rho_hat.matrix());
    let mut order: Vec<usize> = Vec::with_capacity(d);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && (eig.values[end - 1] - eig.values[end]).abs() <= TIE_TOL {
            end += 1;
        }
        let mut group: Vec<(Vec<(i64, i64)>, usize)> =
            (start..end).map(|k| (tie_key(&eig.vectors.column(k).into_owned()), k)).collect();
        group.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        order.extend(group.into_iter().map(|(_, k)| k));
        start = end;
    }
    let frame = ComplexMatrix::from_fn(d, r, |i, j| eig.vectors[(i, order[j])]);
    Projector::from_frame(frame)
}

/// `tr(Rρ)`.
pub fn overlap_with(rho: &DensityMatrix, r: &Projector) -> Result<f64> {
    if rho.dim() != r.dim() {
        return domain(format!("dimension mismatch: state {} vs projector {}", rho.dim(), r.dim()));
    }
    let f = r.frame();
    Ok(trace(&(f.adjoint() * rho.matrix() * f)).re.clamp(0.0, 1.0))
}

/// `(RρR / tr(Rρ), tr(Rρ))`.
pub fn restrict_to_subspace(rho: &DensityMatrix, r: &Projector) -> Result<(DensityMatrix, f64)> {
    let p = overlap_with(rho, r)?;
    if p <= RESTRICTION_TOL {
        return Err(Error::DegenerateRestriction(p));
    }
    let rm = r.matrix();
    let restricted = &rm * rho.matrix() * &rm;
    Ok((DensityMatrix::from_psd_unnormalized(restricted)?, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    In,
    Out,
}

/// Projective measurement `{R, I − R}` on a single copy.
pub fn measure_binary(rho: &DensityMatrix, r: &Projector, rng: &mut SeededRng) -> Result<(Outcome, DensityMatrix)> {
    let p = overlap_with(rho, r)?;
    let u: f64 = rng.random();
    if u < p {
        Ok((Outcome::In, restrict_to_subspace(rho, r)?.0))
    } else {
        Ok((Outcome::Out, restrict_to_subspace(rho, &r.complement())?.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::distance::fidelity;
    use crate::quantum::haar::haar_projector;

    #[test]
    fn rounding_a_projector_state_returns_it() {
        let p = haar_projector(5, 2, &mut SeededRng::new(3)).unwrap();
        let q = round_to_projector_state(&p.state().unwrap(), 2).unwrap();
        assert!(q.approx_eq(&p, 1e-10));
        // idempotent
        let q2 = round_to_projector_state(&q.state().unwrap(), 2).unwrap();
        assert!(q2.approx_eq(&q, 1e-10));
    }

    #[test]
    fn rounding_picks_top_eigenvalues() {
        let rho = DensityMatrix::diagonal(&[0.5, 0.3, 0.2]).unwrap();
        let p = round_to_projector_state(&rho, 2).unwrap();
        assert!(p.approx_eq(&Projector::coordinate(3, 2).unwrap(), 1e-10));
    }

    #[test]
    fn rounding_degenerate_is_deterministic() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        let a = round_to_projector_state(&rho, 1).unwrap();
        let b = round_to_projector_state(&rho, 1).unwrap();
        assert_eq!(a.rank(), 1);
        assert!(a.approx_eq(&b, 0.0));
    }

    #[test]
    fn rounding_rank_above_dim_fails() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(round_to_projector_state(&rho, 3).is_err());
    }

    #[test]
    fn restriction_of_contained_state_is_identity() {
        let p = Projector::coordinate(4, 2).unwrap();
        let r = Projector::coordinate(4, 3).unwrap();
        let rho = p.state().unwrap();
        let (out, tr) = restrict_to_subspace(&rho, &r).unwrap();
        assert!((tr - 1.0).abs() < 1e-12);
        assert!(out.approx_eq(&rho, 1e-12));
    }

    #[test]
    fn restriction_fidelity_matches_closed_form() {
        // P spans e0, e1; R spans e0 and a tilted copy of e1 with tr(PR)/r = 0.99.
        let r_rank = 2.0;
        let c2: f64 = 2.0 * 0.99 - 1.0; // |<e1|w>|² so that (1 + c2)/2 = 0.99
        let mut f = ComplexMatrix::zeros(3, 2);
        f[(0, 0)] = c64(1.0, 0.0);
        f[(1, 1)] = c64(c2.sqrt(), 0.0);
        f[(2, 1)] = c64((1.0 - c2).sqrt(), 0.0);
        let r = Projector::from_frame(f).unwrap();
        let p = Projector::coordinate(3, 2).unwrap();
        assert!((p.trace_with(&r) / r_rank - 0.99).abs() < 1e-12);
        let rho = p.state().unwrap();
        let (restricted, _) = restrict_to_subspace(&rho, &r).unwrap();
        let fid = fidelity(&rho, &restricted).unwrap();
        assert!((fid - 0.99f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn orthogonal_restriction_is_degenerate() {
        let rho = Projector::coordinate(4, 2).unwrap().state().unwrap();
        let r = Projector::coordinate(4, 2).unwrap().complement();
        assert!(matches!(restrict_to_subspace(&rho, &r), Err(Error::DegenerateRestriction(_))));
    }

    #[test]
    fn binary_measurement_extremes() {
        let mut rng = SeededRng::new(8);
        let rho = Projector::coordinate(3, 1).unwrap().state().unwrap();
        let big = Projector::coordinate(3, 2).unwrap();
        for _ in 0..50 {
            assert_eq!(measure_binary(&rho, &big, &mut rng).unwrap().0, Outcome::In);
            assert_eq!(measure_binary(&rho, &big.complement(), &mut rng).unwrap().0, Outcome::Out);
        }
    }

    #[test]
    fn binary_measurement_frequency() {
        // tr(Rρ) = 0.7
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let r = Projector::coordinate(2, 1).unwrap();
        let mut rng = SeededRng::new(2024);
        let trials = 100_000;
        let hits = (0..trials).filter(|_| measure_binary(&rho, &r, &mut rng).unwrap().0 == Outcome::In).count();
        let freq = hits as f64 / trials as f64;
        let se = (0.7f64 * 0.3 / trials as f64).sqrt();
        assert!((freq - 0.7).abs() < 3.0 * se, "freq {freq}");
    }
}
