//! Brute-force tableau enumeration; the reference for every closed-form count.

use super::partition::Partition;

/// Fills cells row by row with entries in `1..=r`, rows weakly increasing and
/// columns strictly increasing; calls `visit` with each completed filling.
pub(crate) fn for_each_ssyt(lambda: &Partition, r: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
    let shape = lambda.parts().to_vec();
    let mut t: Vec<Vec<usize>> = shape.iter().map(|&p| vec![0; p]).collect();
    fn go(
        shape: &[usize],
        r: usize,
        t: &mut Vec<Vec<usize>>,
        i: usize,
        j: usize,
        visit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if i == shape.len() {
            visit(t);
            return;
        }
        if j == shape[i] {
            go(shape, r, t, i + 1, 0, visit);
            return;
        }
        let lo_row = if j > 0 { t[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { t[i - 1][j] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=r {
            t[i][j] = v;
            go(shape, r, t, i, j + 1, visit);
        }
        t[i][j] = 0;
    }
    go(&shape, r, &mut t, 0, 0, visit);
}

pub(crate) fn count_ssyt(lambda: &Partition, r: usize) -> u64 {
    let mut c = 0;
    for_each_ssyt(lambda, r, &mut |_| c += 1);
    c
}

/// Standard tableaux are the semistandard ones using each of `1..=n` once.
pub(crate) fn count_syt(lambda: &Partition) -> u64 {
    let n = lambda.size();
    let mut c = 0;
    for_each_ssyt(lambda, n, &mut |t| {
        let mut seen = vec![false; n + 1];
        if t.iter().flatten().all(|&v| !std::mem::replace(&mut seen[v], true)) {
            c += 1;
        }
    });
    c
}

/// `Σ_T x^T` over SSYT of shape `λ` with entries up to `x.len()`.
pub(crate) fn schur_by_enumeration(lambda: &Partition, x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for_each_ssyt(lambda, x.len(), &mut |t| {
        acc += t.iter().flatten().map(|&v| x[v - 1]).product::<f64>();
    });
    acc
}
