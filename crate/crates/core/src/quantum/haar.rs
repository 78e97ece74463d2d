use rand::Rng;
use rand_distr::StandardNormal;

use super::linalg::*;
use super::state::{DensityMatrix, Projector, PureState};
use crate::error::{domain, Result};
use crate::rng::SeededRng;

/// Matrix of i.i.d. standard complex Gaussians, `E|z|² = 1`.
pub fn complex_gaussian(rows: usize, cols: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64(re * s, im * s)
    })
}

/// Haar-distributed `d×d` unitary.
///
/// QR of a complex Ginibre matrix, with `Q` multiplied by the phases of the
/// diagonal of `R` so that the decomposition is unique and the output is
/// exactly Haar distributed.
pub fn haar_unitary(d: usize, rng: &mut SeededRng) -> Result<ComplexMatrix> {
    if d == 0 {
        return domain("Haar unitary needs d >= 1");
    }
    let qr = complex_gaussian(d, d, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { c64(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    Ok(q)
}

/// Haar-random rank-`r` projector: the span of the first `r` columns of a
/// Haar unitary.
pub fn haar_projector(d: usize, r: usize, rng: &mut SeededRng) -> Result<Projector> {
    if r == 0 || r > d {
        return domain(format!("rank must lie in [1, {d}], got {r}"));
    }
    let u = haar_unitary(d, rng)?;
    Projector::from_frame(u.columns(0, r).into_owned())
}

pub fn haar_state(d: usize, rng: &mut SeededRng) -> Result<PureState> {
    if d == 0 {
        return domain("Haar state needs d >= 1");
    }
    PureState::normalized(complex_gaussian(d, 1, rng).column(0).into_owned())
}

/// Haar-random unit vector inside `supp(frame)`.
pub fn haar_state_in(frame: &ComplexMatrix, rng: &mut SeededRng) -> Result<PureState> {
    if frame.ncols() == 0 {
        return domain("cannot sample a state from an empty subspace");
    }
    let coeffs = complex_gaussian(frame.ncols(), 1, rng);
    PureState::normalized((frame * coeffs).column(0).into_owned())
}

/// Random density matrix of the given rank, `GG†/tr(GG†)` for a complex
/// Ginibre `d × rank` matrix `G` (the induced measure).
pub fn random_density(d: usize, rank: usize, rng: &mut SeededRng) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return domain(format!("rank must lie in [1, {d}], got {rank}"));
    }
    let g = complex_gaussian(d, rank, rng);
    let m = &g * g.adjoint();
    let t = trace(&m).re;
    DensityMatrix::new(m.unscale(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_in_dimension_one_is_a_phase() {
        let mut rng = SeededRng::new(1);
        let u = haar_unitary(1, &mut rng).unwrap();
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_dimension_rejected() {
        let mut rng = SeededRng::new(1);
        assert!(haar_unitary(0, &mut rng).is_err());
        assert!(haar_projector(3, 0, &mut rng).is_err());
        assert!(haar_projector(3, 4, &mut rng).is_err());
    }

    #[test]
    fn unitary_is_unitary_and_deterministic() {
        let u = haar_unitary(4, &mut SeededRng::new(9)).unwrap();
        let v = haar_unitary(4, &mut SeededRng::new(9)).unwrap();
        assert_eq!(u, v);
        assert!(approx_eq(&(u.adjoint() * &u), &ComplexMatrix::identity(4, 4), 1e-10));
    }

    #[test]
    fn full_rank_projector_is_identity() {
        let p = haar_projector(3, 3, &mut SeededRng::new(5)).unwrap();
        assert!(approx_eq(&p.matrix(), &ComplexMatrix::identity(3, 3), 1e-10));
    }

    #[test]
    fn projector_invariants_hold() {
        let p = haar_projector(3, 2, &mut SeededRng::new(11)).unwrap();
        let m = p.matrix();
        assert_eq!(p.rank(), 2);
        assert!(approx_eq(&(&m * &m), &m, 1e-10));
        assert!(hermiticity_defect(&m) < 1e-10);
    }
}
