use super::linalg::*;
use crate::error::{domain, Result};

/// A unit vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    vec: ComplexVector,
}

impl PureState {
    /// Accepts `vec` only if it already has unit norm (to 1e-12).
    pub fn new(vec: ComplexVector) -> Result<Self> {
        let norm = vec.norm();
        if vec.is_empty() || !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return domain(format!("pure state must be a unit vector, got norm {norm}"));
        }
        Ok(Self { vec })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(vec: ComplexVector) -> Result<Self> {
        let norm = vec.norm();
        if !(norm.is_finite() && norm > 1e-300) {
            return domain("cannot normalize a zero or non-finite vector");
        }
        Ok(Self { vec: vec.unscale(norm) })
    }

    pub fn basis(d: usize, i: usize) -> Result<Self> {
        if i >= d {
            return domain(format!("basis index {i} out of range for dimension {d}"));
        }
        let mut v = ComplexVector::zeros(d);
        v[i] = c64(1.0, 0.0);
        Ok(Self { vec: v })
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vec
    }

    pub fn into_vector(self) -> ComplexVector {
        self.vec
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.vec.dotc(&other.vec)
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn outer(&self) -> ComplexMatrix {
        &self.vec * self.vec.adjoint()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix { mat: self.outer() }
    }
}

/// A trace-one positive semidefinite Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity (1e-10), trace one (1e-10) and positivity
    /// (smallest eigenvalue at least -1e-9).
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return domain(format!("density matrix must be square and nonempty, got {:?}", mat.shape()));
        }
        if !all_finite(&mat) {
            return domain("density matrix has non-finite entries");
        }
        let herm = hermiticity_defect(&mat);
        if herm > CONSTRUCTION_TOL {
            return domain(format!("matrix is not Hermitian (defect {herm:e})"));
        }
        let tr = trace(&mat);
        if (tr.re - 1.0).abs() > CONSTRUCTION_TOL || tr.im.abs() > CONSTRUCTION_TOL {
            return domain(format!("trace must be 1, got {tr}"));
        }
        let min_eig = eigh(&mat).values.last().copied().unwrap_or(0.0);
        if min_eig < -PSD_TOL {
            return domain(format!("matrix is not PSD (min eigenvalue {min_eig:e})"));
        }
        Ok(Self { mat: hermitian_part(&mat) })
    }

    /// Symmetrizes and renormalizes a matrix known to be PSD up to rounding.
    pub(crate) fn from_psd_unnormalized(mat: ComplexMatrix) -> Result<Self> {
        let h = hermitian_part(&mat);
        let tr = trace(&h).re;
        if !(tr.is_finite() && tr > 0.0) {
            return domain("cannot normalize a matrix with nonpositive trace");
        }
        Self::new(h.unscale(tr))
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d == 0 {
            return domain("dimension must be positive");
        }
        Ok(Self { mat: ComplexMatrix::identity(d, d).unscale(d as f64) })
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let v = ComplexVector::from_iterator(probs.len(), probs.iter().map(|&p| c64(p, 0.0)));
        Self::new(ComplexMatrix::from_diagonal(&v))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Eigenvalues, descending.
    pub fn spectrum(&self) -> Vec<f64> {
        eigh(&self.mat).values
    }

    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        approx_eq(&self.mat, &other.mat, tol)
    }
}

/// An orthogonal projector stored as an isometry frame.
///
/// The frame is ground truth; the dense `d×d` matrix is derived on demand.
/// Rank zero is allowed and represents the empty projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    frame: ComplexMatrix,
}

impl Projector {
    /// Wraps a `d×r` matrix whose columns are orthonormal to 1e-10.
    pub fn from_frame(frame: ComplexMatrix) -> Result<Self> {
        if frame.nrows() == 0 {
            return domain("projector dimension must be positive");
        }
        if frame.ncols() > frame.nrows() {
            return domain(format!("frame has {} columns in dimension {}", frame.ncols(), frame.nrows()));
        }
        if !all_finite(&frame) {
            return domain("frame has non-finite entries");
        }
        let r = frame.ncols();
        let gram = frame.adjoint() * &frame;
        if !approx_eq(&gram, &ComplexMatrix::identity(r, r), CONSTRUCTION_TOL) {
            return domain("frame columns are not orthonormal");
        }
        Ok(Self { frame })
    }

    /// Projector onto the column span of an arbitrary matrix, with
    /// numerical rank decided by singular values above `cutoff`.
    pub fn from_spanning(vectors: &ComplexMatrix, cutoff: f64) -> Result<Self> {
        Self::from_frame(orthonormal_span(vectors, cutoff))
    }

    /// Recovers a projector from its dense matrix. The frame is built by
    /// pivoted Gram–Schmidt on the columns of `m`, so it is a continuous
    /// function of the matrix alone. An eigenbasis would not be: inside the
    /// degenerate eigenvalue-one eigenspace the solver's choice follows
    /// rounding noise, which correlates with however `m` was computed.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return domain("projector matrix must be square and nonempty");
        }
        if hermiticity_defect(m) > 1e-8 || !approx_eq(&(m * m), m, 1e-8) {
            return domain("matrix is not an orthogonal projector");
        }
        let rank = trace(m).re.round().max(0.0) as usize;
        Self::from_frame(pivoted_column_basis(m, rank))
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::from_frame(ComplexMatrix::identity(d, d))
    }

    pub fn empty(d: usize) -> Result<Self> {
        Self::from_frame(ComplexMatrix::zeros(d, 0))
    }

    /// Projector onto the first `r` standard basis vectors.
    pub fn coordinate(d: usize, r: usize) -> Result<Self> {
        if r > d {
            return domain(format!("rank {r} exceeds dimension {d}"));
        }
        Self::from_frame(ComplexMatrix::identity(d, r))
    }

    pub fn from_states(d: usize, states: &[PureState]) -> Result<Self> {
        let m = ComplexMatrix::from_fn(d, states.len(), |i, j| states[j].vector()[i]);
        Self::from_frame(m)
    }

    pub fn frame(&self) -> &ComplexMatrix {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.frame.ncols()
    }

    pub fn dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn matrix(&self) -> ComplexMatrix {
        &self.frame * self.frame.adjoint()
    }

    pub fn column(&self, k: usize) -> PureState {
        PureState { vec: self.frame.column(k).into_owned() }
    }

    pub fn columns(&self) -> Vec<PureState> {
        (0..self.rank()).map(|k| self.column(k)).collect()
    }

    /// `I - P`.
    pub fn complement(&self) -> Projector {
        Projector { frame: complement_frame(&self.frame) }
    }

    /// `U P U†`, carrying the frame along.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Projector {
        Projector { frame: u * &self.frame }
    }

    /// `⟨v|P|v⟩`.
    pub fn expectation(&self, v: &ComplexVector) -> f64 {
        (self.frame.adjoint() * v).norm_squared()
    }

    /// `tr(P Q)` computed from frames.
    pub fn trace_with(&self, other: &Projector) -> f64 {
        (self.frame.adjoint() * &other.frame).norm_squared()
    }

    /// The projector state `P/r`.
    pub fn state(&self) -> Result<DensityMatrix> {
        if self.rank() == 0 {
            return domain("the empty projector has no normalized state");
        }
        Ok(DensityMatrix { mat: self.matrix().unscale(self.rank() as f64) })
    }

    /// Largest `‖(I - other) · frame‖` entry, i.e. how far `self` is from
    /// lying inside `other`.
    pub fn leakage_outside(&self, other: &Projector) -> f64 {
        let inside = &other.frame * (other.frame.adjoint() * &self.frame);
        max_abs(&(&self.frame - inside))
    }

    pub fn approx_eq(&self, other: &Projector, tol: f64) -> bool {
        self.rank() == other.rank() && approx_eq(&self.matrix(), &other.matrix(), tol)
    }
}
