use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::counting::num_ssyt;
use super::partition::Partition;
use crate::error::{capacity, Result};

/// Default cap on `|λ|` for general (non-uniform) Schur evaluation.
pub const DEFAULT_SCHUR_LIMIT: usize = 12;

/// Scalars a Schur polynomial can be evaluated in.
pub trait SchurScalar: Clone + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> {
    fn from_count(n: &BigUint) -> Self;
}

impl SchurScalar for BigRational {
    fn from_count(n: &BigUint) -> Self {
        BigRational::from_integer(n.clone().into())
    }
}

impl SchurScalar for f64 {
    fn from_count(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `s_λ(x)` with the default size limit.
pub fn schur_eval<T: SchurScalar>(lambda: &Partition, x: &[T]) -> Result<T> {
    schur_eval_with_limit(lambda, x, DEFAULT_SCHUR_LIMIT)
}

/// `s_λ(x)`. When the nonzero entries of `x` all equal some `c` (say `m` of
/// them) this is `c^{|λ|}·s_λ(1^m)` and no limit applies; otherwise
/// `|λ| ≤ limit` is required.
pub fn schur_eval_with_limit<T: SchurScalar>(lambda: &Partition, x: &[T], limit: usize) -> Result<T> {
    let nonzero: Vec<T> = x.iter().filter(|v| !v.is_zero()).cloned().collect();
    if let Some(c) = uniform_value(&nonzero) {
        let count = T::from_count(&num_ssyt(lambda, nonzero.len()));
        return Ok(num_traits::pow(c, lambda.size()) * count);
    }
    if nonzero.is_empty() {
        return Ok(if lambda.is_empty() { T::one() } else { T::zero() });
    }
    if lambda.size() > limit {
        return capacity(format!(
            "|λ| = {} exceeds the Schur evaluation limit {limit} for a non-uniform argument",
            lambda.size()
        ));
    }
    let mut memo = HashMap::new();
    Ok(branch(lambda, &nonzero, &mut memo))
}

fn uniform_value<T: SchurScalar>(x: &[T]) -> Option<T> {
    let first = x.first()?;
    x.iter().all(|v| v == first).then(|| first.clone())
}

/// `s_λ(x_1..x_m) = Σ_μ x_m^{|λ/μ|} s_μ(x_1..x_{m−1})` over horizontal strips
/// `λ/μ`.
fn branch<T: SchurScalar>(lambda: &Partition, x: &[T], memo: &mut HashMap<(Partition, usize), T>) -> T {
    let m = x.len();
    if lambda.len() > m {
        return T::zero();
    }
    if lambda.is_empty() {
        return T::one();
    }
    if m == 1 {
        return num_traits::pow(x[0].clone(), lambda.size());
    }
    if let Some(v) = memo.get(&(lambda.clone(), m)) {
        return v.clone();
    }
    let parts = lambda.parts();
    let ell = parts.len();
    let mut acc = T::zero();
    // μ_i ranges over [λ_{i+1}, λ_i]; μ must have at most m − 1 rows.
    let mut mu: Vec<usize> = (0..ell).map(|i| parts.get(i + 1).copied().unwrap_or(0)).collect();
    loop {
        let mu_len = mu.iter().take_while(|&&v| v > 0).count();
        if mu_len < m {
            let removed = lambda.size() - mu.iter().sum::<usize>();
            let sub = Partition::from_parts_unchecked(mu[..mu_len].to_vec());
            acc = acc + num_traits::pow(x[m - 1].clone(), removed) * branch(&sub, &x[..m - 1], memo);
        }
        // odometer over the box ranges
        let mut i = 0;
        loop {
            if i == ell {
                memo.insert((lambda.clone(), m), acc.clone());
                return acc;
            }
            if mu[i] < parts[i] {
                mu[i] += 1;
                break;
            }
            mu[i] = parts.get(i + 1).copied().unwrap_or(0);
            i += 1;
        }
    }
}
