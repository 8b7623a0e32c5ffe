use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An integer partition `λ ⊢ n`: weakly decreasing positive parts.
///
/// Indexes the conjugacy classes of `S_n` by cycle type. Serializes as a
/// weakly decreasing JSON array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts"));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts not weakly decreasing"));
        }
        Ok(Self { parts })
    }

    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The one-part partition `(n)`.
    pub fn single_cycle(n: usize) -> Self {
        Self::new(alloc::vec![n]).expect("n >= 1")
    }

    /// `(1, …, 1)`.
    pub fn all_ones(n: usize) -> Self {
        Self::new(alloc::vec![1; n]).expect("n >= 1")
    }

    /// `t` parts as equal as possible.
    pub fn balanced(n: usize, t: usize) -> Result<Self> {
        if t == 0 || t > n {
            return Err(Error::OutOfRange("number of parts must be in 1..=n"));
        }
        let (q, r) = (n / t, n % t);
        Self::new((0..t).map(|i| q + usize::from(i < r)).collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// `α_j`, the number of parts equal to `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// Conjugate partition (column lengths of the Young diagram).
    pub fn conjugate(&self) -> Self {
        let cols = (1..=self.parts[0]).map(|j| self.parts.iter().take_while(|&&p| p >= j).count()).collect();
        Self { parts: cols }
    }

    /// `|S_n^λ| = n! / ∏ j^{α_j} α_j!`, `None` on overflow.
    pub fn class_size(&self) -> Option<u128> {
        let mut size: u128 = 1;
        for k in 2..=self.n() as u128 {
            size = size.checked_mul(k)?;
        }
        let mut j = 1;
        while j <= self.parts[0] {
            let a = self.multiplicity(j);
            for k in 1..=a as u128 {
                size /= (j as u128) * k;
            }
            j += 1;
        }
        Some(size)
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![3, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_err());
    }

    #[test]
    fn counts_and_class_sizes() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(6).len(), 11);
        let total: u128 = Partition::all(6).iter().map(|l| l.class_size().unwrap()).sum();
        assert_eq!(total, 720);
        assert_eq!(Partition::single_cycle(5).class_size(), Some(24));
        assert_eq!(Partition::new(vec![2, 2]).unwrap().class_size(), Some(3));
    }

    #[test]
    fn conjugate_and_balanced() {
        let l = Partition::new(vec![4, 2, 1]).unwrap();
        assert_eq!(l.conjugate().parts(), &[3, 2, 1, 1]);
        assert_eq!(Partition::balanced(2000, 3).unwrap().parts(), &[667, 667, 666]);
    }
}
