use serde::{Deserialize, Serialize};

use crate::Permutation;

/// Class functions: each depends only on the cycle type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStatistics {
    /// Non-fixed points.
    pub hamming: usize,
    /// Minimal number of transpositions, `n − cycle_count`.
    pub cayley: usize,
    /// Cycles including fixed points.
    pub cycle_count: usize,
}

pub fn class_statistics(sigma: &Permutation) -> ClassStatistics {
    let n = sigma.len();
    let fixed = sigma.images().iter().enumerate().filter(|&(i, &v)| i == v as usize).count();
    let cycle_count = sigma.num_cycles();
    ClassStatistics { hamming: n - fixed, cayley: n - cycle_count, cycle_count }
}
