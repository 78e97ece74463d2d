//! Dense complex linear algebra shared by every numerical module.
//!
//! The Hermitian eigendecomposition here is the single primitive behind
//! matrix square roots, fidelity and eigenvalue rounding.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Tolerance for construction invariants (hermiticity, trace, orthonormality).
pub const CONSTRUCTION_TOL: f64 = 1e-10;
/// Eigenvalues below this are treated as exact zeros before square roots.
pub const CLIP_TOL: f64 = 1e-12;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-9;
/// Singular-value cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-8;

pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Eigenpairs of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entrywise modulus of `m - m†`.
pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn all_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Entrywise comparison at absolute tolerance `tol`.
pub fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol)
}

/// Eigendecomposition of the Hermitian part of `m`.
pub fn eigh(m: &ComplexMatrix) -> HermitianEigen {
    let n = m.nrows();
    if n == 0 {
        return HermitianEigen { values: vec![], vectors: ComplexMatrix::zeros(0, 0) };
    }
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// `V f(Λ) V†` for the Hermitian part of `m`.
pub fn hermitian_fn(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let eig = eigh(m);
    reassemble(&eig, eig.values.iter().map(|&x| f(x)))
}

fn reassemble(eig: &HermitianEigen, vals: impl Iterator<Item = f64>) -> ComplexMatrix {
    let mut scaled = eig.vectors.clone();
    for (j, v) in vals.enumerate() {
        scaled.column_mut(j).scale_mut(v);
    }
    &scaled * eig.vectors.adjoint()
}

pub fn clip(x: f64) -> f64 {
    if x < CLIP_TOL {
        0.0
    } else {
        x
    }
}

/// Square root of a PSD matrix with small eigenvalues clipped to zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> ComplexMatrix {
    hermitian_fn(m, |x| clip(x).sqrt())
}

pub fn trace(m: &ComplexMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// `tr(A B)` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Orthonormal basis (as columns) for the column span of `m`, dropping
/// directions whose singular value falls below `cutoff`.
pub fn orthonormal_span(m: &ComplexMatrix, cutoff: f64) -> ComplexMatrix {
    let svd = thin_svd(m);
    let keep = svd.values.iter().take_while(|&&s| s > cutoff).count();
    svd.u.columns(0, keep).into_owned()
}

/// Thin singular value decomposition `m = U diag(values) V†`, values
/// descending (ties by original column order), `U` and `V` isometries with
/// `min(rows, cols)` columns.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub values: Vec<f64>,
    pub v: ComplexMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 80;

/// One-sided Jacobi SVD. Accurate to working precision on rank-deficient
/// input, where bidiagonalization-based complex SVD is not reliable.
pub fn thin_svd(m: &ComplexMatrix) -> Svd {
    let (rows, cols) = m.shape();
    if rows < cols {
        let t = thin_svd(&m.adjoint());
        return Svd { u: t.v, values: t.values, v: t.u };
    }
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(cols, cols);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut w, &mut v] {
                    for i in 0..mat.nrows() {
                        let a = mat[(i, p)];
                        let b = mat[(i, q)] * phase.conj();
                        mat[(i, p)] = a * c - b * s;
                        mat[(i, q)] = a * s + b * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..cols).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]).then(a.cmp(&b)));
    let values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v = ComplexMatrix::from_fn(cols, cols, |i, j| v[(i, order[j])]);
    // Columns with negligible norm carry no direction; complete them
    // orthonormally instead.
    let floor = values.first().copied().unwrap_or(0.0) * f64::EPSILON * (rows.max(cols) as f64);
    let good = values.iter().take_while(|&&s| s > floor && s > 0.0).count();
    let mut u = ComplexMatrix::zeros(rows, cols);
    for j in 0..good {
        u.set_column(j, &w.column(order[j]).unscale(values[j]));
    }
    if good < cols {
        let fill = complement_frame(&u.columns(0, good).into_owned());
        u.columns_mut(good, cols - good).copy_from(&fill.columns(0, cols - good));
    }
    Svd { u, values, v }
}

/// Orthonormal basis for the span of `rank` columns of `m`, chosen greedily
/// by largest residual norm (Gram–Schmidt with column pivoting and one
/// reorthogonalization pass).
pub fn pivoted_column_basis(m: &ComplexMatrix, rank: usize) -> ComplexMatrix {
    let (rows, cols) = m.shape();
    let rank = rank.min(rows).min(cols);
    let mut residual = m.clone();
    let mut basis = ComplexMatrix::zeros(rows, rank);
    for k in 0..rank {
        let pivot = (0..cols)
            .max_by(|&a, &b| {
                residual.column(a).norm_squared().total_cmp(&residual.column(b).norm_squared()).then(b.cmp(&a))
            })
            .expect("at least one column");
        let mut q = residual.column(pivot).into_owned();
        for _ in 0..2 {
            let done = basis.columns(0, k);
            q -= done * (done.adjoint() * &q);
        }
        let norm = q.norm();
        if norm == 0.0 {
            return basis.columns(0, k).into_owned();
        }
        q.unscale_mut(norm);
        let coeffs = q.adjoint() * &residual;
        residual -= &q * coeffs;
        basis.set_column(k, &q);
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of the column span of an
/// isometry `frame` inside `C^d`.
pub fn complement_frame(frame: &ComplexMatrix) -> ComplexMatrix {
    let d = frame.nrows();
    let proj = frame * frame.adjoint();
    let eig = eigh(&(ComplexMatrix::identity(d, d) - proj));
    let keep: Vec<usize> = (0..d).filter(|&k| eig.values[k] > 0.5).collect();
    ComplexMatrix::from_fn(d, keep.len(), |i, j| eig.vectors[(i, keep[j])])
}

/// Kronecker product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}
