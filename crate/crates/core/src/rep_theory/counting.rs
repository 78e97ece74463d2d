use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::Partition;
use crate::error::{domain, Result};

/// `j − i` for a 1-indexed cell.
pub fn content(i: usize, j: usize) -> i64 {
    j as i64 - i as i64
}

/// Arm + leg + 1 for a 1-indexed cell of `lambda`.
pub fn hook_length(lambda: &Partition, i: usize, j: usize) -> Result<usize> {
    if !lambda.contains_cell(i, j) {
        return domain(format!("cell ({i},{j}) is not in {lambda}"));
    }
    let arm = lambda.part(i) - j;
    let leg = lambda.column_len(j) - i;
    Ok(arm + leg + 1)
}

fn hooks_product(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    lambda.cells().map(|(i, j)| BigUint::from(lambda.part(i) - j + conj.part(j) - i + 1)).product()
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `dim(λ)`: the number of standard Young tableaux, by the hook-length formula.
pub fn num_syt(lambda: &Partition) -> BigUint {
    factorial(lambda.size()) / hooks_product(lambda)
}

/// Number of semistandard tableaux of shape `λ` with entries in `1..=r`,
/// i.e. `s_λ(1^r)`, by the hook-content formula.
pub fn num_ssyt(lambda: &Partition, r: usize) -> BigUint {
    if lambda.len() > r {
        return BigUint::zero();
    }
    // every r + content is at least 1 once ℓ(λ) ≤ r
    let num: BigUint = lambda.cells().map(|(i, j)| BigUint::from((r as i64 + content(i, j)) as u64)).product();
    num / hooks_product(lambda)
}

/// `λ + e_i` for every row `i` where the result is a partition with at most
/// `d` rows, in row order.
pub fn pieri_expand(lambda: &Partition, d: usize) -> Vec<Partition> {
    (1..=(lambda.len() + 1).min(d)).filter_map(|i| lambda.add_box(i)).collect()
}

/// The necessary conditions for `c^τ_{λμ} > 0`: sizes add up, both factors
/// fit inside `τ`, and `τ` has at most `d` rows. Not sufficient.
pub fn lr_admissible(lambda: &Partition, mu: &Partition, tau: &Partition, d: usize) -> bool {
    lambda.size() + mu.size() == tau.size() && lambda.is_subset_of(tau) && mu.is_subset_of(tau) && tau.len() <= d
}

/// `∏_{(i,j) ∈ τ∖λ} (r + c)/(d + c)` with `c = j − i`.
pub fn content_ratio_product(lambda: &Partition, tau: &Partition, r: usize, d: usize) -> Result<BigRational> {
    if !lambda.is_subset_of(tau) {
        return domain(format!("{lambda} is not contained in {tau}"));
    }
    let mut acc = BigRational::one();
    for (i, j) in tau.cells().filter(|&(i, j)| !lambda.contains_cell(i, j)) {
        let c = content(i, j);
        let den = d as i64 + c;
        if den == 0 {
            return domain(format!("{tau} has more than {d} rows"));
        }
        acc *= BigRational::new(BigInt::from(r as i64 + c), BigInt::from(den));
    }
    Ok(acc)
}

/// `s_λ(1^r)/s_λ(1^d)`, the scalar by which a Haar-random rank-`r`
/// projector acts on average in the irrep `λ` of `U(d)`.
pub fn haar_irrep_scalar(lambda: &Partition, r: usize, d: usize) -> Result<BigRational> {
    if lambda.len() > d {
        return domain(format!("{lambda} has more than {d} rows, so s_λ(1^d) = 0"));
    }
    let num = num_ssyt(lambda, r);
    let den = num_ssyt(lambda, d);
    Ok(BigRational::new(num.into(), den.into()))
}
