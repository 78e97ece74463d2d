use std::collections::HashMap;

use super::partition::Partition;

/// Irreducible character `χ_λ` of `S_n` at cycle type `cycles` (any order),
/// by the Murnaghan–Nakayama rule on β-sets.
pub fn character(lambda: &Partition, cycles: &[usize]) -> i64 {
    assert_eq!(lambda.size(), cycles.iter().sum::<usize>(), "cycle type must partition |λ|");
    let ell = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + ell - 1 - i).collect();
    let mut sorted = cycles.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut memo = HashMap::new();
    mn(beta, &sorted, &mut memo)
}

/// Removing a `k`-rim hook moves one bead from `b` to `b − k`; the sign
/// counts beads jumped over.
fn mn(beta: Vec<usize>, cycles: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&k, rest)) = cycles.split_first() else {
        return 1;
    };
    let key = (beta.clone(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut acc = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - k && c < b).count();
        let mut next = beta.clone();
        next[idx] = b - k;
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        acc += sign * mn(next, rest, memo);
    }
    memo.insert(key, acc);
    acc
}

/// Cycle lengths of a permutation given in one-line form.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}
