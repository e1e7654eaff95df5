use std::cmp::Ordering;
use std::fmt;

/// A weakly decreasing sequence of positive parts, labelling the PBW vector
/// `L(-n_1) L(-n_2) ... L(-n_t) v` with `n_1 ≥ n_2 ≥ … ≥ n_t ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a partition, sorting the parts into decreasing order.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    /// `[k, k, ..., k]` with `count` parts.
    pub fn repeated(k: u32, count: usize) -> Self {
        Self(vec![k; count])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Drops the largest (outermost) part.
    pub fn tail(&self) -> Partition {
        Partition(self.0[1..].to_vec())
    }

    /// Prepends `k`, which must be at least the current largest part.
    pub fn prepend(&self, k: u32) -> Partition {
        debug_assert!(self.first().is_none_or(|f| k >= f));
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.push(k);
        parts.extend_from_slice(&self.0);
        Partition(parts)
    }

    pub fn contains_part(&self, k: u32) -> bool {
        self.0.contains(&k)
    }
}

/// Reverse-lexicographic order: larger leading parts first, so `[2] < [1, 1]`
/// in the sense that `[2]` comes first in a basis listing.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "v");
        }
        for p in &self.0 {
            write!(f, "L(-{p})")?;
        }
        write!(f, "v")
    }
}

/// All partitions of `n` with parts at least `min_part`, in basis order.
pub fn partitions(n: usize, min_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n as u32, n as u32, min_part.max(1), &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    let mut k = max.min(rest);
    while k >= min {
        cur.push(k);
        fill(rest - k, k, min, cur, out);
        cur.pop();
        k -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_partition_numbers() {
        let p: Vec<usize> = (0..10).map(|n| partitions(n, 1).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        // no parts equal to 1: p(n) - p(n-1)
        let q: Vec<usize> = (0..10).map(|n| partitions(n, 2).len()).collect();
        assert_eq!(q, vec![1, 0, 1, 1, 2, 2, 4, 4, 7, 8]);
    }

    #[test]
    fn basis_order_is_reverse_lex() {
        let b = partitions(4, 1);
        let parts: Vec<&[u32]> = b.iter().map(|p| p.parts()).collect();
        assert_eq!(parts, vec![&[4][..], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]]);
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(sorted, b);
    }

    #[test]
    fn new_sorts_parts() {
        assert_eq!(Partition::new(vec![1, 3, 2]).parts(), &[3, 2, 1]);
        assert_eq!(Partition::new(vec![1, 3, 2]).level(), 6);
    }
}
