//! Closed-form moment bounds and sample-complexity thresholds, exact where
//! the formulas are rational.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::rep_theory::{num_ssyt, num_syt, partitions_of};

/// Float comparisons against a validity boundary accept this much overshoot,
/// so that e.g. `ε = 1/√48` computed in floating point is still in range.
pub const BOUNDARY_SLACK: f64 = 1e-12;

fn q(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `binom(d+n−1, n) / binom(d+n+k−1, n+k)`.
pub fn pure_moment_bound(n: u64, d: u64, k: u64) -> Result<BigRational> {
    if d == 0 {
        return domain("pure_moment_bound needs d >= 1");
    }
    let num = binomial(BigUint::from(d + n - 1), BigUint::from(n));
    let den = binomial(BigUint::from(d + n + k - 1), BigUint::from(n + k));
    Ok(BigRational::new(num.into(), den.into()))
}

/// `((n+k)/(d+n+k−1))^k`, never below [`pure_moment_bound`].
pub fn pure_moment_bound_loose(n: u64, d: u64, k: u64) -> Result<f64> {
    if d == 0 {
        return domain("pure_moment_bound_loose needs d >= 1");
    }
    if k == 0 {
        return Ok(1.0);
    }
    Ok(num_traits::pow(q(n + k, d + n + k - 1), k as usize).to_f64().unwrap_or(f64::NAN))
}

/// Parameters of the `λ₁`-conditional affinity moment bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentBoundParams {
    pub n: u64,
    pub d: u64,
    pub r: u64,
    pub k: u64,
    pub lambda1: u64,
}

impl MomentBoundParams {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.r == 0 {
            return domain("need d, r >= 1");
        }
        if self.r > self.d {
            return domain(format!("rank {} exceeds dimension {}", self.r, self.d));
        }
        if self.lambda1 > self.n {
            return domain(format!("lambda1 = {} exceeds n = {}", self.lambda1, self.n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorMomentBound {
    /// `∏_{i=1}^k (r+λ₁+i−1)/(d+λ₁+i−1)`.
    pub exact: BigRational,
    /// `((r+λ₁+k−1)/(d+λ₁+k−1))^k`.
    pub relaxed: BigRational,
}

pub fn projector_affinity_moment_bound(p: &MomentBoundParams) -> Result<ProjectorMomentBound> {
    p.validate()?;
    let exact = (1..=p.k).map(|i| q(p.r + p.lambda1 + i - 1, p.d + p.lambda1 + i - 1)).product();
    let relaxed = if p.k == 0 {
        BigRational::one()
    } else {
        num_traits::pow(q(p.r + p.lambda1 + p.k - 1, p.d + p.lambda1 + p.k - 1), p.k as usize)
    };
    Ok(ProjectorMomentBound { exact, relaxed })
}

/// `E_λ[∏_{i=1}^k (r+λ₁+i−1)/(d+λ₁+i−1)]` with `λ` from weak Schur sampling
/// of `n` copies of a rank-`r` projector state.
pub fn averaged_projector_bound(n: u64, d: u64, r: u64, k: u64) -> Result<BigRational> {
    let base = MomentBoundParams { n, d, r, k, lambda1: 0 };
    base.validate()?;
    let rn = BigUint::from(r).pow(n as u32);
    let mut acc = BigRational::zero();
    for lam in partitions_of(n as usize, r as usize) {
        let prob = BigRational::new((num_syt(&lam) * num_ssyt(&lam, r as usize)).into(), rn.clone().into());
        let b = projector_affinity_moment_bound(&MomentBoundParams { lambda1: lam.first_row() as u64, ..base })?;
        acc += prob * b.exact;
    }
    Ok(acc)
}

/// `⌊1/(16ε²)⌋`.
pub fn choose_k(epsilon: f64) -> Result<u64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return domain(format!("epsilon must be positive, got {epsilon}"));
    }
    Ok((1.0 / (16.0 * epsilon * epsilon)).floor() as u64)
}

pub fn choose_k_exact(epsilon: &BigRational) -> Result<u64> {
    if !epsilon.is_positive() {
        return domain(format!("epsilon must be positive, got {epsilon}"));
    }
    let v = (BigRational::one() / (q(16, 1) * epsilon * epsilon)).floor();
    v.to_integer().to_u64().ok_or_else(|| Error::Domain("k does not fit in 64 bits".into()))
}

fn validity(msg: String) -> Error {
    Error::Validity(msg)
}

/// `d/(64ε²)`, valid for `d ≥ 2`, `0 < ε ≤ 1/√48`.
pub fn pure_threshold_exact(d: u64, epsilon: &BigRational) -> Result<BigRational> {
    if d < 2 || !epsilon.is_positive() || q(48, 1) * epsilon * epsilon > BigRational::one() {
        return Err(validity(format!(
            "pure-state threshold requires d >= 2 and 0 < epsilon <= 1/sqrt(48); got d={d}, epsilon={epsilon}"
        )));
    }
    Ok(q(d, 64) / (epsilon * epsilon))
}

pub fn pure_threshold(d: u64, epsilon: f64) -> Result<f64> {
    if d < 2 || epsilon.is_nan() || epsilon <= 0.0 || 48.0 * epsilon * epsilon > 1.0 + BOUNDARY_SLACK {
        return Err(validity(format!(
            "pure-state threshold requires d >= 2 and 0 < epsilon <= 1/sqrt(48); got d={d}, epsilon={epsilon}"
        )));
    }
    Ok(d as f64 / (64.0 * epsilon * epsilon))
}

/// `rd/(128ε²)`, valid for `d ≥ 2`, `1 ≤ r ≤ d/2`, `0 < ε ≤ 1/80`.
pub fn projector_threshold_exact(d: u64, r: u64, epsilon: &BigRational) -> Result<BigRational> {
    if d < 2 || r == 0 || 2 * r > d || !epsilon.is_positive() || epsilon > &q(1, 80) {
        return Err(validity(format!(
            "projector threshold requires d >= 2, 1 <= r <= d/2 and 0 < epsilon <= 1/80; got d={d}, r={r}, epsilon={epsilon}"
        )));
    }
    Ok(q(r * d, 128) / (epsilon * epsilon))
}

pub fn projector_threshold(d: u64, r: u64, epsilon: f64) -> Result<f64> {
    if d < 2 || r == 0 || 2 * r > d || epsilon.is_nan() || epsilon <= 0.0 || 80.0 * epsilon > 1.0 + BOUNDARY_SLACK {
        return Err(validity(format!(
            "projector threshold requires d >= 2, 1 <= r <= d/2 and 0 < epsilon <= 1/80; got d={d}, r={r}, epsilon={epsilon}"
        )));
    }
    Ok((r * d) as f64 / (128.0 * epsilon * epsilon))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_bound_values() {
        assert_eq!(pure_moment_bound(7, 3, 0).unwrap(), BigRational::one());
        assert_eq!(pure_moment_bound(10, 4, 1).unwrap(), q(11, 14));
        assert_eq!(pure_moment_bound(5, 9, 1).unwrap(), q(6, 14));
        // rising-factorial form
        assert_eq!(pure_moment_bound(10, 4, 2).unwrap(), q(11 * 12, 14 * 15));
        assert!(pure_moment_bound(1, 0, 1).is_err());
    }

    #[test]
    fn loose_bound_values() {
        assert!((pure_moment_bound_loose(10, 4, 2).unwrap() - 0.64).abs() < 1e-15);
        assert!((pure_moment_bound_loose(10, 4, 1).unwrap() - 11.0 / 14.0).abs() < 1e-15);
        for k in 0..6 {
            assert_eq!(pure_moment_bound_loose(9, 1, k).unwrap(), 1.0);
        }
    }

    #[test]
    fn projector_bound_values() {
        let p = MomentBoundParams { n: 5, d: 4, r: 2, k: 1, lambda1: 3 };
        assert_eq!(projector_affinity_moment_bound(&p).unwrap().exact, q(5, 7));
        let full = MomentBoundParams { n: 5, d: 4, r: 4, k: 3, lambda1: 2 };
        assert_eq!(projector_affinity_moment_bound(&full).unwrap().exact, BigRational::one());
        let bad = MomentBoundParams { n: 5, d: 2, r: 4, k: 3, lambda1: 2 };
        assert!(projector_affinity_moment_bound(&bad).is_err());
    }

    #[test]
    fn rank_one_conditional_bound_is_pure_bound() {
        for n in 0..=12 {
            for d in 1..=8 {
                for k in 0..=5 {
                    let p = MomentBoundParams { n, d, r: 1, k, lambda1: n };
                    assert_eq!(projector_affinity_moment_bound(&p).unwrap().exact, pure_moment_bound(n, d, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn relaxed_dominates_exact() {
        for lambda1 in 0..=10 {
            for k in 0..=5 {
                let p = MomentBoundParams { n: 10, d: 6, r: 3, k, lambda1 };
                let b = projector_affinity_moment_bound(&p).unwrap();
                assert!(b.relaxed >= b.exact);
            }
        }
    }

    #[test]
    fn choose_k_values() {
        assert_eq!(choose_k(0.25).unwrap(), 1);
        assert_eq!(choose_k(0.125).unwrap(), 4);
        assert_eq!(choose_k(0.3).unwrap(), 0);
        assert!(choose_k(0.0).is_err());
        assert_eq!(choose_k_exact(&q(1, 4)).unwrap(), 1);
        assert_eq!(choose_k_exact(&q(1, 8)).unwrap(), 4);
    }

    #[test]
    fn threshold_values() {
        assert_eq!(pure_threshold_exact(64, &q(1, 8)).unwrap(), BigRational::from_integer(64.into()));
        assert_eq!(projector_threshold_exact(4, 2, &q(1, 80)).unwrap(), BigRational::from_integer(400.into()));
        assert!((pure_threshold(64, 0.125).unwrap() - 64.0).abs() < 1e-12);
        assert!((projector_threshold(4, 2, 0.0125).unwrap() - 400.0).abs() < 1e-9);
    }

    #[test]
    fn threshold_validity() {
        assert!(pure_threshold(2, 1.0 / 48f64.sqrt()).is_ok());
        assert!(matches!(pure_threshold(2, 0.2), Err(Error::Validity(_))));
        assert!(matches!(pure_threshold(1, 0.1), Err(Error::Validity(_))));
        assert!(matches!(projector_threshold(4, 3, 0.01), Err(Error::Validity(_))));
        assert!(matches!(projector_threshold_exact(4, 2, &q(1, 79)), Err(Error::Validity(_))));
        let a = projector_threshold(10, 2, 0.01).unwrap();
        let b = projector_threshold(10, 2, 0.005).unwrap();
        assert!((b / a - 4.0).abs() < 1e-12);
    }

    #[test]
    fn averaged_bound_is_a_probability_average() {
        // k = 0 averages the constant 1
        assert_eq!(averaged_projector_bound(6, 3, 2, 0).unwrap(), BigRational::one());
        let b = averaged_projector_bound(6, 3, 2, 2).unwrap();
        assert!(b > BigRational::zero() && b < BigRational::one());
    }
}
