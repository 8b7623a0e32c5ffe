use serde::{Deserialize, Serialize};

use super::pow_u128;
use crate::{Error, Permutation, Result};

/// `ρ_q(σ) = Σᵢ |σ(i) − i|^q`. `q = 1` is the footrule, `q = 2` Spearman's rho.
pub fn spearman_rho_q(sigma: &Permutation, q: u32) -> Result<u128> {
    if q == 0 {
        return Err(Error::OutOfRange("q must be >= 1"));
    }
    Ok(sigma.images().iter().enumerate().map(|(i, &v)| pow_u128((i as u64).abs_diff(u64::from(v)), q)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoInf {
    /// `max |i − σ(i)|`
    pub rho_inf: u32,
    /// `n − ρ_∞`
    pub h: u32,
    /// `max (i − σ(i))`, at least 0
    pub one_sided: u32,
}

pub fn spearman_rho_inf(sigma: &Permutation) -> RhoInf {
    let mut two = 0u32;
    let mut one = 0u32;
    for (i, &v) in sigma.images().iter().enumerate() {
        let i = i as u32;
        two = two.max(i.abs_diff(v));
        one = one.max(i.saturating_sub(v));
    }
    RhoInf { rho_inf: two, h: sigma.len() as u32 - two, one_sided: one }
}
