//! Jordan's-lemma geometry for pairs of projectors: principal-angle block
//! decomposition, blockwise distance formulas, well-aligned subspaces,
//! robust covering and the basis lift.

use crate::error::{domain, Result};
use crate::quantum::linalg::*;
use crate::quantum::{Projector, PureState};
use crate::rng::SeededRng;

/// Overlaps at or below this count as zero when classifying blocks.
pub const BLOCK_ZERO_TOL: f64 = 1e-8;
/// Overlaps within this of one count as a shared direction.
pub const BLOCK_ONE_TOL: f64 = 1e-8;
/// Largest squared overlap allowed inside a 2×2 block of a robust cover.
pub const ROBUST_COVER_MAX_OVERLAP_SQ: f64 = 0.1;
/// Slack applied to `ω² ≥ threshold` when selecting aligned blocks.
pub const ALIGN_SLACK: f64 = 1e-10;
/// Tolerance for the subprojector precondition.
pub const SUBPROJECTOR_TOL: f64 = 1e-8;

/// One Jordan block: `|⟨u|v⟩| = omega`, `sine = √(1 − omega²)`.
///
/// `sine` is computed as `‖(I − P)v‖`, which stays accurate when `omega` is
/// within rounding of 1.
#[derive(Debug, Clone)]
pub struct JordanBlock {
    pub u: PureState,
    pub v: PureState,
    pub omega: f64,
    pub sine: f64,
}

/// Blocks sorted by descending `omega`; exactly `rank` of them.
#[derive(Debug, Clone)]
pub struct JordanDecomposition {
    blocks: Vec<JordanBlock>,
    dim: usize,
}

impl JordanDecomposition {
    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    pub fn omegas(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.omega).collect()
    }

    /// `(Σ|u_i⟩⟨u_i|, Σ|v_i⟩⟨v_i|)`.
    pub fn reconstruct(&self) -> (ComplexMatrix, ComplexMatrix) {
        let mut p = ComplexMatrix::zeros(self.dim, self.dim);
        let mut q = ComplexMatrix::zeros(self.dim, self.dim);
        for b in &self.blocks {
            p += b.u.outer();
            q += b.v.outer();
        }
        (p, q)
    }

    fn u_frame(&self, keep: impl Fn(&JordanBlock) -> bool) -> ComplexMatrix {
        let cols: Vec<&ComplexVector> = self.blocks.iter().filter(|b| keep(b)).map(|b| b.u.vector()).collect();
        ComplexMatrix::from_fn(self.dim, cols.len(), |i, j| cols[j][i])
    }

    fn v_frame(&self, keep: impl Fn(&JordanBlock) -> bool) -> ComplexMatrix {
        let cols: Vec<&ComplexVector> = self.blocks.iter().filter(|b| keep(b)).map(|b| b.v.vector()).collect();
        ComplexMatrix::from_fn(self.dim, cols.len(), |i, j| cols[j][i])
    }
}

/// Principal pairs of two isometries `f1` (d×r1), `f2` (d×r2): `w1_k = f1·a_k`,
/// `w2_k = f2·b_k` with `⟨w1_k|w2_l⟩ = σ_k δ_kl`, sorted by descending σ.
/// Columns of the larger frame not matched by any pair are returned
/// separately; they are orthogonal to the whole other frame.
struct PrincipalPairs {
    pairs: Vec<(ComplexVector, ComplexVector, f64)>,
    extra1: ComplexMatrix,
    extra2: ComplexMatrix,
}

fn principal_pairs(f1: &ComplexMatrix, f2: &ComplexMatrix) -> PrincipalPairs {
    let d = f1.nrows();
    let (r1, r2) = (f1.ncols(), f2.ncols());
    if r1 == 0 || r2 == 0 {
        return PrincipalPairs { pairs: Vec::new(), extra1: f1.clone(), extra2: f2.clone() };
    }
    let gram = f1.adjoint() * f2;
    let Svd { u: a, values, v: b } = thin_svd(&gram);
    let pairs =
        values.iter().enumerate().map(|(i, &s)| (f1 * a.column(i), f2 * b.column(i), s.clamp(0.0, 1.0))).collect();
    // The thin SVD covers min(r1, r2) directions; the rest of the larger
    // frame is its complement inside that frame.
    let extra = |f: &ComplexMatrix, used: &ComplexMatrix| -> ComplexMatrix {
        if f.ncols() == used.ncols() {
            return ComplexMatrix::zeros(d, 0);
        }
        f * complement_frame(used)
    };
    PrincipalPairs { pairs, extra1: extra(f1, &a), extra2: extra(f2, &b) }
}

fn decompose_frames(fp: &ComplexMatrix, fq: &ComplexMatrix) -> JordanDecomposition {
    let pp = principal_pairs(fp, fq);
    let blocks = pp
        .pairs
        .into_iter()
        .map(|(u, v, omega)| {
            let outside = &v - fp * (fp.adjoint() * &v);
            JordanBlock {
                u: PureState::normalized(u).expect("isometry image of a unit vector"),
                v: PureState::normalized(v).expect("isometry image of a unit vector"),
                omega,
                sine: outside.norm().clamp(0.0, 1.0),
            }
        })
        .collect();
    JordanDecomposition { blocks, dim: fp.nrows() }
}

/// Jordan decomposition of two equal-rank projectors via the SVD of the
/// cross-Gram matrix `frame(P)†·frame(Q)`.
pub fn jordan_decompose(p: &Projector, q: &Projector) -> Result<JordanDecomposition> {
    if p.dim() != q.dim() {
        return domain(format!("dimension mismatch: {} vs {}", p.dim(), q.dim()));
    }
    if p.rank() != q.rank() {
        return domain(format!("rank mismatch: {} vs {}", p.rank(), q.rank()));
    }
    if p.rank() == 0 {
        return domain("Jordan decomposition needs rank >= 1");
    }
    Ok(decompose_frames(p.frame(), q.frame()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockwiseMetrics {
    pub trace_distance: f64,
    pub fidelity: f64,
    pub affinity: f64,
}

/// Distances between `P/r` and `Q/r` from the block overlaps alone.
pub fn blockwise_metrics(dec: &JordanDecomposition) -> BlockwiseMetrics {
    let r = dec.rank() as f64;
    let mut m = metrics_from_omegas(&dec.omegas());
    m.trace_distance = dec.blocks.iter().map(|b| b.sine).sum::<f64>() / r;
    m
}

pub fn metrics_from_omegas(omegas: &[f64]) -> BlockwiseMetrics {
    let r = omegas.len() as f64;
    BlockwiseMetrics {
        trace_distance: omegas.iter().map(|w| (1.0 - w * w).max(0.0).sqrt()).sum::<f64>() / r,
        fidelity: omegas.iter().sum::<f64>() / r,
        affinity: omegas.iter().map(|w| w * w).sum::<f64>() / r,
    }
}

/// Matched well-aligned subprojectors: `first` lies in `P1`, `second` in `P2`,
/// both spanned by the Jordan vectors of the blocks with `ω² ≥ threshold`.
#[derive(Debug, Clone)]
pub struct AlignedPair {
    pub first: Projector,
    pub second: Projector,
}

pub fn aligned_pair(p1: &Projector, p2: &Projector, threshold: f64) -> Result<AlignedPair> {
    let dec = jordan_decompose(p1, p2)?;
    let keep = |b: &JordanBlock| b.omega * b.omega >= threshold - ALIGN_SLACK;
    Ok(AlignedPair {
        first: Projector::from_frame(dec.u_frame(keep))?,
        second: Projector::from_frame(dec.v_frame(keep))?,
    })
}

/// Projector onto the span of the Jordan vectors of `p1` whose blocks have
/// `ω² ≥ threshold`. May have rank zero.
pub fn align_projector(p1: &Projector, p2: &Projector, threshold: f64) -> Result<Projector> {
    Ok(aligned_pair(p1, p2, threshold)?.first)
}

fn check_subprojector(sub: &Projector, of: &Projector, name: &str) -> Result<()> {
    if sub.dim() != of.dim() {
        return domain(format!("{name}: dimension mismatch"));
    }
    if sub.rank() > 0 && sub.leakage_outside(of) > SUBPROJECTOR_TOL {
        return domain(format!("{name} is not a subprojector"));
    }
    Ok(())
}

fn numerical_rank_of_sum(a: &Projector, b: &Projector) -> usize {
    let sum = a.matrix() + b.matrix();
    eigh(&sum).values.iter().filter(|&&x| x > RANK_TOL).count()
}

enum BlockClass {
    /// 1×1 block fixed by the first projector.
    First(ComplexVector),
    /// 1×1 block fixed only by the second projector.
    Second(ComplexVector),
    /// 2×2 block with `⟨w1|w2⟩ = overlap`.
    Pair { w1: ComplexVector, w2: ComplexVector, overlap: C64 },
}

fn classify_blocks(pi1: &Projector, pi2: &Projector) -> Vec<BlockClass> {
    let pp = principal_pairs(pi1.frame(), pi2.frame());
    let mut out = Vec::new();
    for (w1, w2, sigma) in pp.pairs {
        if sigma >= 1.0 - BLOCK_ONE_TOL {
            out.push(BlockClass::First(w1));
        } else if sigma <= BLOCK_ZERO_TOL {
            out.push(BlockClass::First(w1));
            out.push(BlockClass::Second(w2));
        } else {
            let overlap = w1.dotc(&w2);
            out.push(BlockClass::Pair { w1, w2, overlap });
        }
    }
    out.extend(pp.extra1.column_iter().map(|c| BlockClass::First(c.into_owned())));
    out.extend(pp.extra2.column_iter().map(|c| BlockClass::Second(c.into_owned())));
    out
}

/// The two robust-cover conditions, reported separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverReport {
    /// `rank(Π₁ + Π₂) = rank(Π)`.
    pub rank_ok: bool,
    /// Largest `|⟨w₁|w₂⟩|²` over the 2×2 blocks of `(Π₁, Π₂)`; 0 if none.
    pub max_pair_overlap_sq: f64,
}

impl CoverReport {
    pub fn overlap_ok(&self) -> bool {
        self.max_pair_overlap_sq <= ROBUST_COVER_MAX_OVERLAP_SQ
    }

    pub fn robust(&self) -> bool {
        self.rank_ok && self.overlap_ok()
    }
}

pub fn cover_report(pi1: &Projector, pi2: &Projector, pi: &Projector) -> Result<CoverReport> {
    check_subprojector(pi1, pi, "first projector")?;
    check_subprojector(pi2, pi, "second projector")?;
    let rank_ok = numerical_rank_of_sum(pi1, pi2) == pi.rank();
    let max_pair_overlap_sq = classify_blocks(pi1, pi2)
        .iter()
        .filter_map(|c| match c {
            BlockClass::Pair { overlap, .. } => Some(overlap.norm_sqr()),
            _ => None,
        })
        .fold(0.0, f64::max);
    Ok(CoverReport { rank_ok, max_pair_overlap_sq })
}

/// Whether `pi1` and `pi2` robustly cover `pi`: together they span it, and
/// every 2×2 block of the pair has squared overlap at most 0.1.
pub fn robust_cover_check(pi1: &Projector, pi2: &Projector, pi: &Projector) -> Result<bool> {
    Ok(cover_report(pi1, pi2, pi)?.robust())
}

/// An orthonormal basis of `supp(P)` together with its lift into
/// `supp(A1 + A2)`; `overlaps[k] = |⟨basis_k|lifted_k⟩|²`.
#[derive(Debug, Clone)]
pub struct LiftedBasis {
    pub basis: Vec<PureState>,
    pub lifted: Vec<PureState>,
    pub overlaps: Vec<f64>,
}

impl LiftedBasis {
    pub fn min_overlap(&self) -> f64 {
        self.overlaps.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Linear map sending `x ∈ supp(B)` to its preimage under `P` inside
/// `supp(A)`: `Σ_k ⟨b_k|x⟩/⟨b_k|a_k⟩ · a_k` over the Jordan pairs of (B, A).
struct Preimage {
    b: ComplexMatrix,
    a_scaled: ComplexMatrix,
}

impl Preimage {
    fn new(b: &Projector, a: &Projector, name: &str) -> Result<Self> {
        if a.rank() != b.rank() {
            return domain(format!("{name}: aligned pair ranks differ ({} vs {})", a.rank(), b.rank()));
        }
        let dec = decompose_frames(b.frame(), a.frame());
        let d = b.dim();
        let n = dec.rank();
        let mut bm = ComplexMatrix::zeros(d, n);
        let mut am = ComplexMatrix::zeros(d, n);
        for (k, blk) in dec.blocks.iter().enumerate() {
            let s = blk.u.inner(&blk.v);
            if s.norm() <= BLOCK_ZERO_TOL {
                return domain(format!("{name}: aligned pair contains an orthogonal block"));
            }
            bm.set_column(k, blk.u.vector());
            am.set_column(k, &(blk.v.vector() / s));
        }
        Ok(Self { b: bm, a_scaled: am })
    }

    fn apply(&self, x: &ComplexVector) -> ComplexVector {
        &self.a_scaled * (self.b.adjoint() * x)
    }
}

fn unit(v: ComplexVector) -> Result<PureState> {
    PureState::normalized(v)
}

/// Builds the block-adapted basis of `supp(P)` from the Jordan blocks of
/// `(B1, B2)` and lifts each vector through the matched aligned pairs
/// `(A_i, B_i)`.
pub fn lift_basis(
    p: &Projector,
    a1: &Projector,
    b1: &Projector,
    a2: &Projector,
    b2: &Projector,
) -> Result<LiftedBasis> {
    if !robust_cover_check(b1, b2, p)? {
        return domain("B1 and B2 do not robustly cover P");
    }
    let lift1 = Preimage::new(b1, a1, "first")?;
    let lift2 = Preimage::new(b2, a2, "second")?;
    let mut basis = Vec::with_capacity(p.rank());
    let mut lifted = Vec::with_capacity(p.rank());
    for class in classify_blocks(b1, b2) {
        match class {
            BlockClass::First(u) => {
                lifted.push(unit(lift1.apply(&u))?);
                basis.push(unit(u)?);
            }
            BlockClass::Second(v) => {
                lifted.push(unit(lift2.apply(&v))?);
                basis.push(unit(v)?);
            }
            BlockClass::Pair { w1, w2, overlap } => {
                let w1_tilde = unit(lift1.apply(&w1))?.into_vector();
                let w2_tilde = unit(lift2.apply(&w2))?.into_vector();
                let perp = &w2 - &w1 * overlap;
                let perp_tilde = &w2_tilde - &w1_tilde * overlap;
                basis.push(unit(w1)?);
                lifted.push(unit(w1_tilde)?);
                basis.push(unit(perp)?);
                lifted.push(unit(perp_tilde)?);
            }
        }
    }
    let overlaps = basis.iter().zip(&lifted).map(|(x, y)| x.overlap(y)).collect();
    Ok(LiftedBasis { basis, lifted, overlaps })
}

/// A projector with the same rank as `p` whose Jordan overlaps with `p` are
/// `cos θ_k`: column `k` of the frame becomes `cos θ_k f_k + sin θ_k g_k` for
/// random orthonormal `g_k` in the complement of `p`.
pub fn with_principal_angles(p: &Projector, angles: &[f64], rng: &mut SeededRng) -> Result<Projector> {
    if angles.len() != p.rank() {
        return domain(format!("expected {} angles, got {}", p.rank(), angles.len()));
    }
    let tilted: Vec<usize> = (0..angles.len()).filter(|&k| angles[k].sin().abs() > 0.0).collect();
    let comp = complement_frame(p.frame());
    if tilted.len() > comp.ncols() {
        return domain(format!(
            "{} tilted directions need a complement of that dimension, have {}",
            tilted.len(),
            comp.ncols()
        ));
    }
    let g = if tilted.is_empty() {
        ComplexMatrix::zeros(p.dim(), 0)
    } else {
        let iso = crate::quantum::haar::haar_unitary(comp.ncols(), rng)?;
        &comp * iso.columns(0, tilted.len())
    };
    let mut frame = p.frame().clone();
    for (j, &k) in tilted.iter().enumerate() {
        let (s, c) = angles[k].sin_cos();
        let col = p.frame().column(k) * c64(c, 0.0) + g.column(j) * c64(s, 0.0);
        frame.set_column(k, &col);
    }
    Projector::from_frame(frame)
}
