//! Weak Schur sampling: exact outcome distributions over partitions, a
//! seeded sampler, and the dense isotypic projectors used to cross-check them.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{capacity, domain, Result};
use crate::quantum::linalg::*;
use crate::quantum::symmetric::{check_dense, digits, permutations, permuted_index, tensor_power};
use crate::quantum::DensityMatrix;
use crate::rep_theory::{character, cycle_type, num_ssyt, num_syt, partitions_of, schur_eval, Partition};
use crate::rng::SeededRng;

/// Largest `n` accepted on the uniform-spectrum fast path.
pub const UNIFORM_WSS_MAX_N: usize = 200;

/// A probability vector sorted in descending order, summing to exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    alpha: Vec<BigRational>,
}

impl Spectrum {
    pub fn new(mut alpha: Vec<BigRational>) -> Result<Self> {
        if alpha.is_empty() {
            return domain("spectrum must be nonempty");
        }
        if alpha.iter().any(|a| a < &BigRational::zero() || a > &BigRational::one()) {
            return domain("spectrum entries must lie in [0, 1]");
        }
        if alpha.iter().sum::<BigRational>() != BigRational::one() {
            return domain("spectrum must sum to exactly 1");
        }
        alpha.sort_by(|a, b| b.cmp(a));
        Ok(Self { alpha })
    }

    /// `r` entries equal to `1/r`, padded with zeros to length `d`.
    pub fn uniform(r: usize, d: usize) -> Result<Self> {
        if r == 0 || r > d {
            return domain(format!("need 1 <= r <= d, got r={r}, d={d}"));
        }
        let mut alpha = vec![BigRational::new(1.into(), (r as u64).into()); r];
        alpha.resize(d, BigRational::zero());
        Ok(Self { alpha })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn support(&self) -> usize {
        self.alpha.iter().filter(|a| !a.is_zero()).count()
    }

    /// `Some(r)` when the nonzero entries are all `1/r`.
    pub fn uniform_support(&self) -> Option<usize> {
        let r = self.support();
        let first = &self.alpha[0];
        self.alpha[..r].iter().all(|a| a == first).then_some(r)
    }
}

/// Exact law of the weak-Schur-sampling outcome on `n` copies.
///
/// Rows cover every `λ ⊢ n` with `ℓ(λ) ≤ d` in reverse-lexicographic order,
/// zero-probability rows included; probabilities sum to exactly 1.
#[derive(Debug, Clone)]
pub struct WssDistribution {
    n: usize,
    d: usize,
    table: Vec<(Partition, BigRational)>,
    cumulative: Vec<f64>,
}

impl WssDistribution {
    fn from_table(n: usize, d: usize, table: Vec<(Partition, BigRational)>) -> Self {
        let mut acc = 0.0;
        let cumulative = table
            .iter()
            .map(|(_, p)| {
                acc += p.to_f64().unwrap_or(0.0);
                acc
            })
            .collect();
        Self { n, d, table, cumulative }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[(Partition, BigRational)] {
        &self.table
    }

    pub fn probability(&self, lambda: &Partition) -> BigRational {
        self.table.iter().find(|(l, _)| l == lambda).map(|(_, p)| p.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self) -> BigRational {
        self.table.iter().map(|(_, p)| p).sum()
    }

    /// Rows `partition,prob_num,prob_den,prob_float` under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition,prob_num,prob_den,prob_float\n");
        for (lam, p) in &self.table {
            out.push_str(&format!(
                "{},{},{},{}\n",
                lam.dashed(),
                p.numer(),
                p.denom(),
                crate::output::fmt_f64(p.to_f64().unwrap_or(f64::NAN))
            ));
        }
        out
    }
}

/// `Pr[λ] = dim(λ)·s_λ(α)` for every `λ ⊢ n` with `ℓ(λ) ≤ d`.
pub fn wss_distribution(n: usize, spectrum: &Spectrum) -> Result<WssDistribution> {
    let d = spectrum.dim();
    let lambdas = partitions_of(n, d);
    let table = if let Some(r) = spectrum.uniform_support() {
        if n > UNIFORM_WSS_MAX_N {
            return capacity(format!("n = {n} exceeds the uniform-spectrum limit {UNIFORM_WSS_MAX_N}"));
        }
        let rn = BigUint::from(r).pow(n as u32);
        lambdas
            .into_iter()
            .map(|lam| {
                let num = num_syt(&lam) * num_ssyt(&lam, r);
                let p = BigRational::new(num.into(), rn.clone().into());
                (lam, p)
            })
            .collect()
    } else {
        lambdas
            .into_iter()
            .map(|lam| {
                let s = schur_eval(&lam, spectrum.values())?;
                let dim = BigRational::from_integer(num_syt(&lam).into());
                Ok((lam, dim * s))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(WssDistribution::from_table(n, d, table))
}

/// Inverse-CDF draw over the rows in table order.
pub fn wss_sample(dist: &WssDistribution, rng: &mut SeededRng) -> Partition {
    let total = *dist.cumulative.last().expect("distribution has at least one row");
    let u: f64 = rng.random::<f64>() * total;
    let k = dist.cumulative.partition_point(|&c| c <= u);
    // Guard the top end against rounding and never return a zero row.
    let k = k.min(dist.table.len() - 1);
    let k = (0..=k).rev().find(|&i| !dist.table[i].1.is_zero()).unwrap_or(k);
    dist.table[k].0.clone()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda1Stats {
    pub mean: f64,
    /// Fraction of draws with `λ₁ ≥ 2n/r`.
    pub frac_exceeding_2n_over_r: f64,
}

/// Empirical first-row statistics of WSS on the uniform rank-`r` state.
pub fn lambda1_stats(n: usize, r: usize, samples: usize, rng: &mut SeededRng) -> Result<Lambda1Stats> {
    if samples == 0 {
        return domain("need at least one sample");
    }
    let dist = wss_distribution(n, &Spectrum::uniform(r, r)?)?;
    let mut sum = 0usize;
    let mut exceed = 0usize;
    for _ in 0..samples {
        let l1 = wss_sample(&dist, rng).first_row();
        sum += l1;
        if l1 * r >= 2 * n {
            exceed += 1;
        }
    }
    Ok(Lambda1Stats { mean: sum as f64 / samples as f64, frac_exceeding_2n_over_r: exceed as f64 / samples as f64 })
}

/// Dense isotypic projector `(dim λ / n!)·Σ_π χ_λ(π) P(π)` on `(C^d)^{⊗n}`.
pub fn isotypic_projector(lambda: &Partition, d: usize, limit: usize) -> Result<ComplexMatrix> {
    let n = lambda.size();
    let dim = check_dense(n, d, limit)?;
    let perms = permutations(n);
    let scale = num_syt(lambda).to_f64().unwrap_or(f64::NAN) / perms.len() as f64;
    let weights: Vec<f64> = perms.iter().map(|p| scale * character(lambda, &cycle_type(p)) as f64).collect();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let digs = digits(col, d, n);
        for (p, &w) in perms.iter().zip(&weights) {
            if w != 0.0 {
                m[(permuted_index(&digs, p, d), col)] += c64(w, 0.0);
            }
        }
    }
    Ok(m)
}

/// `tr(Π_λ ρ^{⊗n})` by dense linear algebra.
pub fn dense_wss_probability(lambda: &Partition, rho: &DensityMatrix, limit: usize) -> Result<f64> {
    let pi = isotypic_projector(lambda, rho.dim(), limit)?;
    let big = tensor_power(rho.matrix(), lambda.size());
    Ok(trace_of_product(&pi, &big).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::symmetric::sym_projector;
    use crate::stats::Summary;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_copy() {
        let dist = wss_distribution(1, &Spectrum::new(vec![q(1, 2), q(1, 3), q(1, 6)]).unwrap()).unwrap();
        assert_eq!(dist.probability(&p(&[1])), BigRational::one());
    }

    #[test]
    fn two_copies_of_maximally_mixed_qubit() {
        let dist = wss_distribution(2, &Spectrum::uniform(2, 2).unwrap()).unwrap();
        assert_eq!(dist.probability(&p(&[2])), q(3, 4));
        assert_eq!(dist.probability(&p(&[1, 1])), q(1, 4));
        // hand evaluation: s_(2)(½,½) = 3/4, s_(1,1)(½,½) = 1/4, dims 1
        let general = wss_distribution(2, &Spectrum::new(vec![q(1, 2), q(1, 2)]).unwrap()).unwrap();
        assert_eq!(general.entries(), dist.entries());
    }

    #[test]
    fn pure_state_is_point_mass() {
        let dist = wss_distribution(7, &Spectrum::uniform(1, 4).unwrap()).unwrap();
        assert_eq!(dist.probability(&p(&[7])), BigRational::one());
        assert_eq!(dist.total(), BigRational::one());
    }

    #[test]
    fn general_spectrum_normalizes() {
        let s = Spectrum::new(vec![q(1, 2), q(1, 4), q(1, 8), q(1, 8)]).unwrap();
        for n in 0..=8 {
            assert_eq!(wss_distribution(n, &s).unwrap().total(), BigRational::one());
        }
    }

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(Spectrum::new(vec![q(3, 2), q(-1, 2)]).is_err());
        assert_eq!(Spectrum::new(vec![q(1, 4), q(3, 4)]).unwrap().values()[0], q(3, 4));
        assert_eq!(Spectrum::uniform(2, 5).unwrap().uniform_support(), Some(2));
    }

    #[test]
    fn capacity_for_large_general_spectrum() {
        let s = Spectrum::new(vec![q(1, 2), q(1, 3), q(1, 6)]).unwrap();
        assert!(matches!(wss_distribution(13, &s), Err(crate::error::Error::Capacity(_))));
        assert!(wss_distribution(150, &Spectrum::uniform(3, 3).unwrap()).is_ok());
    }

    #[test]
    fn sampler_point_mass_and_determinism() {
        let dist = wss_distribution(5, &Spectrum::uniform(1, 3).unwrap()).unwrap();
        let mut g = SeededRng::new(3);
        for _ in 0..100 {
            assert_eq!(wss_sample(&dist, &mut g), p(&[5]));
        }
        let dist = wss_distribution(6, &Spectrum::uniform(3, 3).unwrap()).unwrap();
        let a: Vec<Partition> = {
            let mut g = SeededRng::new(4);
            (0..50).map(|_| wss_sample(&dist, &mut g)).collect()
        };
        let b: Vec<Partition> = {
            let mut g = SeededRng::new(4);
            (0..50).map(|_| wss_sample(&dist, &mut g)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn sampler_frequency() {
        let dist = wss_distribution(2, &Spectrum::uniform(2, 2).unwrap()).unwrap();
        let mut g = SeededRng::new(5);
        let xs: Vec<f64> = (0..100_000).map(|_| if wss_sample(&dist, &mut g) == p(&[2]) { 1.0 } else { 0.0 }).collect();
        assert!(Summary::of(&xs).within(0.75, 3.0));
    }

    #[test]
    fn lambda1_pure_case() {
        let s = lambda1_stats(9, 1, 200, &mut SeededRng::new(6)).unwrap();
        assert_eq!(s.mean, 9.0);
        // λ₁ = n < 2n
        assert_eq!(s.frac_exceeding_2n_over_r, 0.0);
    }

    #[test]
    fn isotypic_projectors_resolve_identity() {
        for (n, d) in [(2usize, 2usize), (3, 2), (3, 3)] {
            let mut sum = ComplexMatrix::zeros(d.pow(n as u32), d.pow(n as u32));
            for lam in partitions_of(n, n) {
                let pi = isotypic_projector(&lam, d, 4096).unwrap();
                assert!(approx_eq(&(&pi * &pi), &pi, 1e-10));
                sum += pi;
            }
            assert!(approx_eq(&sum, &ComplexMatrix::identity(sum.nrows(), sum.nrows()), 1e-10));
        }
        let sym = isotypic_projector(&p(&[3]), 2, 4096).unwrap();
        assert!(approx_eq(&sym, &sym_projector(3, 2).unwrap(), 1e-12));
    }

    #[test]
    fn exact_table_matches_dense_projection() {
        let spectra = [
            vec![q(1, 2), q(1, 2)],
            vec![q(2, 3), q(1, 3)],
            vec![q(1, 2), q(1, 3), q(1, 6)],
            vec![q(1, 3), q(1, 3), q(1, 3)],
            vec![q(3, 5), q(2, 5), q(0, 1)],
        ];
        for alpha in spectra {
            let s = Spectrum::new(alpha).unwrap();
            let probs: Vec<f64> = s.values().iter().map(|a| a.to_f64().unwrap()).collect();
            let rho = DensityMatrix::diagonal(&probs).unwrap();
            for n in 1..=3 {
                let dist = wss_distribution(n, &s).unwrap();
                for (lam, pr) in dist.entries() {
                    let dense = dense_wss_probability(lam, &rho, 4096).unwrap();
                    assert!((dense - pr.to_f64().unwrap()).abs() < 1e-10, "{lam}: {dense} vs {pr}");
                }
            }
        }
    }
}
