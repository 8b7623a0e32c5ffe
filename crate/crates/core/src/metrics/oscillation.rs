use super::{pow_u128, spearman_rho_q};
use crate::{Error, Permutation, Result};

/// `Σᵢ |σ(i+skip) − σ(i)|^q` with indices taken mod n (so `σ(n+1) = σ(1)`).
pub fn oscillation(sigma: &Permutation, q: u32, skip: usize) -> Result<u128> {
    if q == 0 {
        return Err(Error::OutOfRange("q must be >= 1"));
    }
    let n = sigma.len();
    if skip == 0 || skip >= n {
        return Err(Error::OutOfRange("skip must satisfy 1 <= skip < n"));
    }
    let w = sigma.images();
    Ok((0..n).map(|i| pow_u128(u64::from(w[(i + skip) % n].abs_diff(w[i])), q)).sum())
}

/// `ρ_{q,2}(σ) = Σᵢ |σ²(i) − i|^q`.
pub fn rho_q_on_square(sigma: &Permutation, q: u32) -> Result<u128> {
    spearman_rho_q(&sigma.square(), q)
}

/// `Σᵢ ((σ²(i) − σ(i)) − (σ(i) − i))²`.
pub fn second_order_oscillation(sigma: &Permutation) -> u128 {
    let w = sigma.images();
    w.iter()
        .enumerate()
        .map(|(i, &v)| {
            let d = i64::from(w[v as usize]) - 2 * i64::from(v) + i as i64;
            (d * d) as u128
        })
        .sum()
}
