//! Trace distance, fidelity, Bures distance and affinity.
//!
//! Fidelity uses the square-root convention `tr √(√ρ σ √ρ)`.

use super::linalg::*;
use super::state::DensityMatrix;
use crate::error::{domain, Result};

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return domain(format!("dimension mismatch: {:?} vs {:?}", a.shape(), b.shape()));
    }
    Ok(())
}

fn ensure_psd(m: &ComplexMatrix) -> Result<()> {
    let min = eigh(m).values.last().copied().unwrap_or(0.0);
    if min < -PSD_TOL {
        return domain(format!("matrix is not PSD (min eigenvalue {min:e})"));
    }
    Ok(())
}

/// `½‖A − B‖₁` for Hermitian `A`, `B`.
pub fn trace_distance_matrices(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_dim(a, b)?;
    Ok(0.5 * eigh(&(a - b)).values.iter().map(|x| x.abs()).sum::<f64>())
}

/// Fidelity of two PSD matrices (not necessarily normalized).
pub fn fidelity_matrices(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_dim(a, b)?;
    ensure_psd(a)?;
    ensure_psd(b)?;
    // ‖√A √B‖₁ via singular values: eigenvalues of √A B √A would put
    // rounding noise of 1e-16 under a square root.
    Ok(thin_svd(&(psd_sqrt(a) * psd_sqrt(b))).values.iter().sum())
}

/// Affinity `tr(√A √B)` of two PSD matrices.
pub fn affinity_matrices(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_dim(a, b)?;
    ensure_psd(a)?;
    ensure_psd(b)?;
    Ok(trace_of_product(&psd_sqrt(a), &psd_sqrt(b)).re)
}

pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(trace_distance_matrices(rho.matrix(), sigma.matrix())?.clamp(0.0, 1.0))
}

/// Fidelity clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(fidelity_matrices(rho.matrix(), sigma.matrix())?.clamp(0.0, 1.0))
}

/// `√(2(1 − F))`.
pub fn bures_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    Ok((2.0 * (1.0 - f)).max(0.0).sqrt())
}

pub fn affinity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(affinity_matrices(rho.matrix(), sigma.matrix())?.clamp(0.0, 1.0))
}

/// Bures distance from a fidelity value.
pub fn bures_from_fidelity(f: f64) -> f64 {
    (2.0 * (1.0 - f.clamp(0.0, 1.0))).sqrt()
}
