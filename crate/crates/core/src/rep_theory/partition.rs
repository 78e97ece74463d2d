use std::fmt;

use crate::error::{domain, Result};

/// A weakly decreasing sequence of positive parts. The empty sequence is the
/// unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zero parts are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("{parts:?} is not a partition"));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self(vec![n])
        }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(Self::new(parts.clone()).map(|p| p.0 == parts).unwrap_or(false));
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ₁`, or 0 for the empty partition.
    pub fn first_row(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Row `i` (1-indexed); 0 past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of column `j` (1-indexed).
    pub fn column_len(&self, j: usize) -> usize {
        self.0.iter().take_while(|&&p| p >= j).count()
    }

    /// Whether the 1-indexed cell `(i, j)` lies in the diagram.
    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && j <= self.part(i)
    }

    /// All cells `(i, j)`, 1-indexed, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// Diagram containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `λ + e_i` for a 1-indexed row, if the result is a partition.
    pub fn add_box(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.len() + 1 || (i > 1 && self.part(i - 1) <= self.part(i)) {
            return None;
        }
        let mut parts = self.0.clone();
        if i == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[i - 1] += 1;
        }
        Some(Self(parts))
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        Self((1..=self.first_row()).map(|j| self.column_len(j)).collect())
    }

    /// Parts joined by `-`; the empty partition renders as an empty string.
    pub fn dashed(&self) -> String {
        self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("-")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = crate::error::Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl std::str::FromStr for Partition {
    type Err = crate::error::Error;

    /// Accepts `4-3-2`, `4,3,2` or `(4,3,2)`; empty input is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.is_empty() {
            return Ok(Self::empty());
        }
        let parts = body
            .split(['-', ','])
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| crate::error::Error::Domain(format!("bad partition {s:?}: {e}")))?;
        Self::new(parts)
    }
}

/// All partitions of `n` with at most `max_len` parts, in reverse
/// lexicographic order.
pub fn partitions_of(n: usize, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, max_len, &mut cur, &mut out);
    out
}

fn fill(rest: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        // the remaining slots must be able to absorb what is left
        if p * slots < rest {
            break;
        }
        cur.push(p);
        fill(rest - p, p, slots - 1, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(p(&[3, 1, 0, 0]), p(&[3, 1]));
        assert_eq!(p(&[]).size(), 0);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(partitions_of(0, 0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4, 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_of(3, 3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert!(partitions_of(3, 0).is_empty());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // oracle: filter all weakly decreasing tuples from a full product
        for n in 0..=9 {
            for max_len in 0..=5 {
                let mut brute: Vec<Partition> = Vec::new();
                let mut stack = vec![Vec::<usize>::new()];
                while let Some(cur) = stack.pop() {
                    let s: usize = cur.iter().sum();
                    if s == n {
                        brute.push(Partition::new(cur.clone()).unwrap());
                        continue;
                    }
                    if cur.len() == max_len {
                        continue;
                    }
                    for x in 1..=(n - s) {
                        if cur.last().is_none_or(|&l| x <= l) {
                            let mut nxt = cur.clone();
                            nxt.push(x);
                            stack.push(nxt);
                        }
                    }
                }
                brute.sort();
                brute.reverse();
                assert_eq!(partitions_of(n, max_len), brute, "n={n} max_len={max_len}");
            }
        }
    }

    #[test]
    fn box_addition() {
        assert_eq!(p(&[2, 1]).add_box(1), Some(p(&[3, 1])));
        assert_eq!(p(&[2, 2]).add_box(2), None);
        assert_eq!(p(&[2, 2]).add_box(3), Some(p(&[2, 2, 1])));
        assert_eq!(p(&[2, 2]).add_box(4), None);
        assert_eq!(Partition::empty().add_box(1), Some(p(&[1])));
    }

    #[test]
    fn conjugate_and_parse() {
        assert_eq!(p(&[4, 3, 2]).conjugate(), p(&[3, 3, 2, 1]));
        assert_eq!("4-3-2".parse::<Partition>().unwrap(), p(&[4, 3, 2]));
        assert_eq!("(2,1)".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!(p(&[4, 3, 2]).dashed(), "4-3-2");
        assert_eq!(p(&[2, 1]).to_string(), "(2,1)");
    }
}
