//! The symmetric subspace of `(C^d)^{⊗n}` and permutation operators.

use num_bigint::BigUint;
use num_integer::binomial;

use super::linalg::*;
use crate::error::{capacity, Result};

/// Default cap on `d^n` for dense tensor-power operators.
pub const DEFAULT_DENSE_LIMIT: usize = 4096;

/// `binom(n + d − 1, n)`.
pub fn sym_dimension(n: u64, d: u64) -> BigUint {
    assert!(d >= 1, "sym_dimension needs d >= 1");
    binomial(BigUint::from(n + d - 1), BigUint::from(n))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Tensor-factor digits of a basis index, most significant factor first.
pub(crate) fn digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

pub(crate) fn undigits(ds: impl Iterator<Item = usize>, d: usize) -> usize {
    ds.fold(0, |acc, x| acc * d + x)
}

/// Index of `P(π)|i⟩`, where factor `k` of the input moves to slot `π(k)`.
pub(crate) fn permuted_index(digs: &[usize], perm: &[usize], d: usize) -> usize {
    let mut out = vec![0; digs.len()];
    for (k, &target) in perm.iter().enumerate() {
        out[target] = digs[k];
    }
    undigits(out.into_iter(), d)
}

pub(crate) fn check_dense(n: usize, d: usize, limit: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..n {
        dim = match dim.checked_mul(d) {
            Some(x) if x <= limit => x,
            _ => return capacity(format!("d^n = {d}^{n} exceeds the dense limit {limit}")),
        };
    }
    Ok(dim)
}

/// `(1/n!) Σ_π P(π)` on `(C^d)^{⊗n}`, with the default size limit.
pub fn sym_projector(n: usize, d: usize) -> Result<ComplexMatrix> {
    sym_projector_with_limit(n, d, DEFAULT_DENSE_LIMIT)
}

pub fn sym_projector_with_limit(n: usize, d: usize, limit: usize) -> Result<ComplexMatrix> {
    let dim = check_dense(n, d, limit)?;
    let perms = permutations(n);
    let w = 1.0 / perms.len() as f64;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let digs = digits(col, d, n);
        for p in &perms {
            m[(permuted_index(&digs, p, d), col)] += c64(w, 0.0);
        }
    }
    Ok(m)
}

/// `M^{⊗n}`.
pub fn tensor_power(m: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(1, 1);
    for _ in 0..n {
        acc = kron(&acc, m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_values() {
        assert_eq!(sym_dimension(1, 7), BigUint::from(7u32));
        assert_eq!(sym_dimension(2, 2), BigUint::from(3u32));
        assert_eq!(sym_dimension(3, 2), BigUint::from(4u32));
        assert_eq!(sym_dimension(0, 5), BigUint::from(1u32));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn single_copy_projector_is_identity() {
        let m = sym_projector(1, 3).unwrap();
        assert!(approx_eq(&m, &ComplexMatrix::identity(3, 3), 1e-14));
    }

    #[test]
    fn two_qubit_symmetric_projector() {
        let m = sym_projector(2, 2).unwrap();
        assert!((trace(&m).re - 3.0).abs() < 1e-12);
        assert!(approx_eq(&(&m * &m), &m, 1e-12));
        assert!(hermiticity_defect(&m) < 1e-14);
    }

    #[test]
    fn over_limit_is_capacity_error() {
        assert!(matches!(sym_projector_with_limit(5, 4, 1000), Err(crate::error::Error::Capacity(_))));
    }
}
