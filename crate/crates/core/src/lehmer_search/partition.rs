use std::fmt;

use serde::Serialize;

use super::SearchError;

/// A multiset of positive degrees `e_1 <= ... <= e_s` with `s >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; rejects zero parts and fewer than two parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SearchError> {
        if parts.len() < 2 {
            return Err(SearchError::InvalidPartition(format!(
                "need at least two parts, got {parts:?}"
            )));
        }
        if parts.contains(&0) {
            return Err(SearchError::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn s(&self) -> usize {
        self.parts.len()
    }

    /// `u_d`: how many parts equal `d`.
    pub fn multiplicity(&self, d: u32) -> usize {
        self.parts.iter().filter(|&&e| e == d).count()
    }

    pub fn largest(&self) -> u32 {
        *self.parts.last().expect("partitions are nonempty")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n` into at least two parts, in colex order: compared
/// from the largest part downwards, smallest first.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    colex(n, n, &mut current, &mut out);
    out.into_iter()
        .filter(|p: &Vec<u32>| p.len() >= 2)
        .map(|parts| Partition { parts })
        .collect()
}

/// Partitions of `n` with largest part exactly `largest`, in colex order.
pub fn partitions_with_largest(n: u32, largest: u32) -> Vec<Partition> {
    partitions(n)
        .into_iter()
        .filter(|p| p.largest() == largest)
        .collect()
}

/// Appends nondecreasing sequences summing to `n` with parts at most `max`,
/// ordered colexicographically. `suffix` holds the already chosen larger parts
/// in descending order.
fn colex(n: u32, max: u32, suffix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(suffix.iter().rev().copied().collect());
        return;
    }
    for top in 1..=max.min(n) {
        suffix.push(top);
        colex(n - top, top, suffix, out);
        suffix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colex_key(p: &Partition) -> Vec<u32> {
        p.parts().iter().rev().copied().collect()
    }

    #[test]
    fn construction() {
        let p = Partition::new(vec![3, 1, 2]).unwrap();
        assert_eq!(p.parts(), &[1, 2, 3]);
        assert_eq!((p.n(), p.s()), (6, 3));
        assert_eq!(p.to_string(), "(1,2,3)");
        assert!(Partition::new(vec![4]).is_err());
        assert!(Partition::new(vec![0, 4]).is_err());
        assert_eq!(Partition::new(vec![1, 1, 2]).unwrap().multiplicity(1), 2);
    }

    #[test]
    fn counts_match_partition_numbers() {
        // p(n) - 1 excludes the single-part partition.
        let p_n = [1u32, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for n in 1..=10u32 {
            assert_eq!(partitions(n).len() as u32, p_n[n as usize] - 1, "n={n}");
        }
        assert_eq!(partitions(30).len(), 5604 - 1);
    }

    #[test]
    fn colex_order_and_validity() {
        for n in 2..=12 {
            let ps = partitions(n);
            assert!(ps.iter().all(|p| p.n() == n && p.s() >= 2));
            assert!(ps.windows(2).all(|w| colex_key(&w[0]) < colex_key(&w[1])));
        }
        let four: Vec<String> = partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["(1,1,1,1)", "(1,1,2)", "(2,2)", "(1,3)"]);
        let by_largest: Vec<String> = partitions_with_largest(6, 3)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(by_largest, ["(1,1,1,3)", "(1,2,3)", "(3,3)"]);
    }
}
