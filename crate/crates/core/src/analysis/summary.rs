use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::EmpiricalDistribution;
use crate::{Error, Result};

/// A raw sample moment with its jackknife standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub order: u32,
    pub value: f64,
    pub std_err: f64,
}

/// Raw moments of orders `1..=max_order` (at most 6).
pub fn moment_summary(d: &EmpiricalDistribution, max_order: u32) -> Result<Vec<MomentEstimate>> {
    if !(1..=6).contains(&max_order) {
        return Err(Error::OutOfRange("max_order must be in 1..=6"));
    }
    let xs = d.samples();
    let n = xs.len() as f64;
    Ok((1..=max_order)
        .map(|k| {
            let powers: Vec<f64> = xs.iter().map(|&x| libm::pow(x, k as f64)).collect();
            let total: f64 = powers.iter().sum();
            let value = total / n;
            // For a plain mean the jackknife reduces to the usual sd/√n.
            let std_err = if xs.len() < 2 {
                0.0
            } else {
                let ss: f64 = powers.iter().map(|p| (p - value) * (p - value)).sum();
                libm::sqrt(ss / (n * (n - 1.0)))
            };
            MomentEstimate { order: k, value, std_err }
        })
        .collect())
}
