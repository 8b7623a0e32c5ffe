use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Partition, Result};

/// A permutation of `{1, …, n}` in one-line notation.
///
/// Stored 0-based; every public accessor is 1-based. Serializes as a JSON
/// array of the 1-based word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from its 1-based one-line word.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let images: Vec<u32> = word.into_iter().map(|s| s.wrapping_sub(1)).collect();
        Self::from_zero_based(images).map_err(|_| Error::InvalidPermutation(n))
    }

    pub fn from_word(word: &[u32]) -> Result<Self> {
        Self::new(word.to_vec())
    }

    pub fn from_zero_based(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > u32::MAX as usize {
            return Err(Error::InvalidPermutation(n));
        }
        let mut seen = alloc::vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    /// Caller guarantees `images` is a bijection of `0..n`, `n >= 1`.
    pub(crate) fn from_zero_based_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_zero_based(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have positive size");
        Self { images: (0..n as u32).collect() }
    }

    /// Uniformly random permutation of size `n` (Fisher–Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut p = Self::identity(n);
        p.images.shuffle(rng);
        p
    }

    /// Builds a permutation from 1-based cycles; omitted symbols are fixed.
    pub fn from_cycles<C: AsRef<[u32]>>(n: usize, cycles: &[C]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation(0));
        }
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = alloc::vec![false; n];
        for cycle in cycles {
            let c = cycle.as_ref();
            for (k, &s) in c.iter().enumerate() {
                let a = s.wrapping_sub(1) as usize;
                let b = c[(k + 1) % c.len()].wrapping_sub(1);
                if a >= n || b as usize >= n || touched[a] {
                    return Err(Error::InvalidPermutation(n));
                }
                touched[a] = true;
                images[a] = b;
            }
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// Always false; permutations have positive size.
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize] + 1
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn word(&self) -> Vec<u32> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::SizeMismatch { left: self.len(), right: other.len() })
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self { images: other.images.iter().map(|&j| self.images[j as usize]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0u32; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Self { images: inv }
    }

    pub fn square(&self) -> Self {
        Self { images: self.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    /// Disjoint cycles (1-based), each starting at its smallest symbol, in
    /// increasing order of that symbol. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u32 + 1);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let n = self.len();
        let mut seen = alloc::vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
            }
        }
        count
    }

    pub fn cycle_type(&self) -> Partition {
        let parts = self.cycles().iter().map(Vec::len).collect();
        Partition::from_unsorted(parts).expect("cycle lengths always partition n")
    }

    /// All `n!` permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        Permutations { next: Some(Self::identity(n)) }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter().map(|v| v + 1)).finish()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<u32>) -> Result<Self> {
        Self::new(word)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.word()
    }
}

/// Lexicographic enumeration of `S_n`.
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut a = current.images.clone();
        // next_permutation
        if let Some(i) = (0..a.len().saturating_sub(1)).rev().find(|&i| a[i] < a[i + 1]) {
            let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
            a.swap(i, j);
            a[i + 1..].reverse();
            self.next = Some(Permutation { images: a });
        }
        Some(current)
    }
}
