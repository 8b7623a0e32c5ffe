use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::{Error, Partition, Permutation, Result};

/// Shape of the RSK insertion tableau. The first row is the longest
/// increasing subsequence, the number of rows the longest decreasing one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoungShape {
    rows: Vec<usize>,
}

impl YoungShape {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<usize> {
        (1..=self.rows.first().copied().unwrap_or(0))
            .map(|j| self.rows.iter().take_while(|&&r| r >= j).count())
            .collect()
    }

    pub fn to_partition(&self) -> Partition {
        Partition::new(self.rows.clone()).expect("RSK shapes are partitions")
    }
}

/// RSK shape by Schensted row insertion.
pub fn rsk_shape(sigma: &Permutation) -> YoungShape {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &v in sigma.images() {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(alloc::vec![x]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&y| y < x);
            if pos == row.len() {
                row.push(x);
                break;
            }
            x = core::mem::replace(&mut row[pos], x);
            r += 1;
        }
    }
    YoungShape { rows: rows.iter().map(Vec::len).collect() }
}

/// RSK shape together with the first `k` row lengths `I_1..I_k` and column
/// lengths `D_1..D_k` (zero-padded past the end of the diagram).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Greene {
    pub shape: YoungShape,
    pub increasing: Vec<usize>,
    pub decreasing: Vec<usize>,
}

impl Greene {
    /// `Σ_{j≤k} I_j`: largest union of `k` increasing subsequences.
    pub fn increasing_union(&self, k: usize) -> usize {
        self.increasing.iter().take(k).sum()
    }

    pub fn decreasing_union(&self, k: usize) -> usize {
        self.decreasing.iter().take(k).sum()
    }
}

pub fn rsk_and_greene(sigma: &Permutation, k: usize) -> Result<Greene> {
    if k == 0 || k > sigma.len() {
        return Err(Error::OutOfRange("k must satisfy 1 <= k <= n"));
    }
    let shape = rsk_shape(sigma);
    let pad = |v: &[usize]| (0..k).map(|j| v.get(j).copied().unwrap_or(0)).collect();
    let increasing = pad(shape.rows());
    let decreasing = pad(&shape.columns());
    Ok(Greene { shape, increasing, decreasing })
}

fn patience(values: impl Iterator<Item = u32>) -> usize {
    let mut tails: Vec<u32> = Vec::new();
    for v in values {
        let pos = tails.partition_point(|&t| t < v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

/// Longest increasing subsequence by patience sorting.
pub fn lis_length(sigma: &Permutation) -> usize {
    patience(sigma.images().iter().copied())
}

pub fn lds_length(sigma: &Permutation) -> usize {
    let n = sigma.len() as u32;
    patience(sigma.images().iter().map(|&v| n - 1 - v))
}
