//! Record cycle forms and the bijections/couplings built on them.
//!
//! All maps here are pure functions of their arguments. Randomized ones take
//! the rng explicitly.

use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Partition, Permutation, Result};

/// Cycle notation with each cycle rotated so its largest symbol leads, and
/// cycles ordered by strictly increasing leading symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordCycleForm {
    cycles: Vec<Vec<u32>>,
}

impl RecordCycleForm {
    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Concatenation of the cycles, brackets erased.
    pub fn word(&self) -> Vec<u32> {
        self.cycles.concat()
    }

    /// Reads the cycles back as a permutation.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.len(), &self.cycles).expect("record form covers 1..=n")
    }

    /// Inverse of bracket erasure: a new cycle opens at every left-to-right
    /// maximum of the word.
    pub fn from_word(word: &[u32]) -> Self {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut max = 0;
        for &s in word {
            if s > max {
                max = s;
                cycles.push(Vec::new());
            }
            cycles.last_mut().expect("first symbol opens a cycle").push(s);
        }
        Self { cycles }
    }
}

/// Rotates one cycle so that its maximum comes first.
fn rotate_max_first(cycle: &mut [u32]) {
    let pos = cycle.iter().enumerate().max_by_key(|&(_, &s)| s).map(|(i, _)| i).unwrap_or(0);
    cycle.rotate_left(pos);
}

pub fn record_form(sigma: &Permutation) -> RecordCycleForm {
    let mut cycles = sigma.cycles();
    for c in &mut cycles {
        rotate_max_first(c);
    }
    cycles.sort_unstable_by_key(|c| c[0]);
    RecordCycleForm { cycles }
}

/// The record map `r`: erase the brackets of the record cycle form and read
/// the sequence as a one-line word.
pub fn record_map(sigma: &Permutation) -> Permutation {
    Permutation::new(record_form(sigma).word()).expect("record form is a word of 1..=n")
}

/// Inverse of [`record_map`].
pub fn record_map_inverse(pi: &Permutation) -> Permutation {
    RecordCycleForm::from_word(&pi.word()).to_permutation()
}

/// `r_τ(σ) = τ⁻¹ ∘ r(τ σ τ⁻¹) ∘ τ`, the group conjugate of the record map.
pub fn conjugated_record_map(sigma: &Permutation, tau: &Permutation) -> Result<Permutation> {
    ordered_record_map(sigma, tau)?.compose(tau)
}

/// `τ⁻¹ ∘ r(τ σ τ⁻¹)`: the record map read under the ordering
/// `i <_τ j ⇔ τ(i) < τ(j)`. Each cycle starts at its `τ`-largest symbol and
/// cycles are listed by increasing `τ`-value of that symbol; symbols are
/// written unchanged. On an `n`-cycle this lists the cycle starting from
/// `τ⁻¹(n)`, so a uniform `τ` yields a uniformly random rotation.
pub fn ordered_record_map(sigma: &Permutation, tau: &Permutation) -> Result<Permutation> {
    let tau_inv = tau.inverse();
    let conj = tau.compose(sigma)?.compose(&tau_inv)?;
    tau_inv.compose(&record_map(&conj))
}

fn check_partition(sigma: &Permutation, lambda: &Partition) -> Result<()> {
    if lambda.n() == sigma.len() {
        Ok(())
    } else {
        Err(Error::PartitionSize { partition: lambda.n(), size: sigma.len() })
    }
}

/// `Y^λ` (also written `φ_λ`): cut the one-line word of `σ` into
/// consecutive blocks of lengths `λ₁, λ₂, …` and read each block as a cycle.
pub fn bracket_insertion(sigma: &Permutation, lambda: &Partition) -> Result<Permutation> {
    check_partition(sigma, lambda)?;
    let word = sigma.images();
    let mut images = alloc::vec![0u32; word.len()];
    let mut start = 0;
    for &len in lambda.parts() {
        let block = &word[start..start + len];
        for k in 0..len {
            images[block[k] as usize] = block[(k + 1) % len];
        }
        start += len;
    }
    Ok(Permutation::from_zero_based_unchecked(images))
}

/// `M^λ = Y^λ ∘ r`, pushing uniform on `S_n` to uniform on `S_n^λ`.
pub fn conditional_class_map(sigma: &Permutation, lambda: &Partition) -> Result<Permutation> {
    check_partition(sigma, lambda)?;
    bracket_insertion(&record_map(sigma), lambda)
}

/// `φ_λ ∘ r_{τ′} ∘ φ_{(n)} ∘ r_τ (σ)` with both record maps in their
/// ordered form ([`ordered_record_map`]). For uniform `σ` and `τ′` the result
/// is uniform on `S_n^λ`, whatever `τ`.
pub fn symmetrized_class_map(
    sigma: &Permutation,
    tau: &Permutation,
    tau_prime: &Permutation,
    lambda: &Partition,
) -> Result<Permutation> {
    check_partition(sigma, lambda)?;
    let n_cycle = Partition::single_cycle(sigma.len());
    let step = bracket_insertion(&ordered_record_map(sigma, tau)?, &n_cycle)?;
    bracket_insertion(&ordered_record_map(&step, tau_prime)?, lambda)
}

/// Uniform element of `S_n^λ` by laying down the brackets first and filling
/// them with a uniform word.
pub fn sample_with_cycle_type<R: Rng + ?Sized>(lambda: &Partition, rng: &mut R) -> Permutation {
    let sigma = Permutation::random(lambda.n(), rng);
    bracket_insertion(&sigma, lambda).expect("sizes agree")
}

/// Conjugacy-class preserving bijection: each record-form cycle
/// `(a₁ a₂ … a_j)` becomes `(a₁ a₃ a₅ … a₂ a₄ …)`.
pub fn sqrt_rearrangement(sigma: &Permutation) -> Permutation {
    let form = record_form(sigma);
    let cycles: Vec<Vec<u32>> = form
        .cycles()
        .iter()
        .map(|c| c.iter().step_by(2).chain(c.iter().skip(1).step_by(2)).copied().collect())
        .collect();
    Permutation::from_cycles(sigma.len(), &cycles).expect("same symbols")
}

/// `β`: splits every even cycle, written largest element first, into its two
/// halves; odd cycles are untouched. Satisfies
/// `β(sqrt_rearrangement(σ)) = σ²`.
pub fn bracket_split(sigma: &Permutation) -> Permutation {
    let form = record_form(sigma);
    let mut cycles: Vec<&[u32]> = Vec::with_capacity(form.cycles().len() * 2);
    for c in form.cycles() {
        if c.len() % 2 == 0 {
            let (a, b) = c.split_at(c.len() / 2);
            cycles.push(a);
            cycles.push(b);
        } else {
            cycles.push(c);
        }
    }
    Permutation::from_cycles(sigma.len(), &cycles).expect("same symbols")
}

/// Chinese-restaurant insertion of the symbol `n + 1`.
///
/// Draws a Bernoulli(1/(n+1)) and then a uniform index `k ∈ [n]`, always in
/// that order. On success `n+1` is a fixed point; otherwise `τ(k) = n+1`
/// and `τ(n+1) = σ(k)`.
pub fn crp_extend<R: Rng + ?Sized>(sigma: &Permutation, rng: &mut R) -> Permutation {
    let n = sigma.len();
    let fixed = rng.random_bool(1.0 / (n as f64 + 1.0));
    let k = rng.random_range(0..n);
    crp_insert(sigma, if fixed { None } else { Some(k as u32 + 1) })
}

/// Deterministic CRP step: `None` makes `n+1` a fixed point, `Some(k)`
/// (1-based) inserts `n+1` after `k` in its cycle.
pub fn crp_insert(sigma: &Permutation, k: Option<u32>) -> Permutation {
    let n = sigma.len() as u32;
    let mut images = sigma.images().to_vec();
    match k {
        None => images.push(n),
        Some(k) => {
            let k = (k - 1) as usize;
            images.push(images[k]);
            images[k] = n;
        }
    }
    Permutation::from_zero_based_unchecked(images)
}

/// The n-cycle visiting the one-line word of `σ` in order:
/// `τ(σ(k)) = σ(k+1)`, indices mod n. Equivalently `τ^{∘k}(i₀) = σ(k)` with
/// the anchor `i₀ = σ(n)`; the cycle itself does not depend on which symbol
/// is used as anchor, so `i0` is only validated.
pub fn cyclify(sigma: &Permutation, i0: u32) -> Result<Permutation> {
    let n = sigma.len();
    if i0 == 0 || i0 as usize > n {
        return Err(Error::OutOfRange("cyclify start index must lie in 1..=n"));
    }
    let word = sigma.images();
    let mut images = alloc::vec![0u32; n];
    for k in 0..n {
        images[word[k] as usize] = word[(k + 1) % n];
    }
    Ok(Permutation::from_zero_based_unchecked(images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(w: &[u32]) -> Permutation {
        Permutation::from_word(w).unwrap()
    }

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn record_form_examples() {
        assert_eq!(record_form(&Permutation::identity(3)).cycles(), &[vec![1], vec![2], vec![3]]);
        assert_eq!(record_form(&p(&[2, 3, 1])).cycles(), &[vec![3, 1, 2]]);
        assert_eq!(record_form(&p(&[2, 1, 4, 3])).cycles(), &[vec![2, 1], vec![4, 3]]);
    }

    #[test]
    fn record_map_examples() {
        assert_eq!(record_map(&Permutation::identity(3)), Permutation::identity(3));
        assert_eq!(record_map(&p(&[2, 3, 1])), p(&[3, 1, 2]));
        for s in Permutation::all(5) {
            assert_eq!(record_map_inverse(&record_map(&s)), s);
        }
    }

    #[test]
    fn conjugated_record_map_examples() {
        for s in Permutation::all(4) {
            let id = Permutation::identity(4);
            assert_eq!(conjugated_record_map(&s, &id).unwrap(), record_map(&s));
            assert!(conjugated_record_map(&id, &s).unwrap().is_identity());
        }
        assert!(conjugated_record_map(&p(&[1, 2]), &p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn bracket_insertion_examples() {
        let ones = Partition::all_ones(4);
        for s in Permutation::all(4) {
            assert!(bracket_insertion(&s, &ones).unwrap().is_identity());
        }
        let three = Partition::single_cycle(3);
        assert_eq!(bracket_insertion(&p(&[1, 2, 3]), &three).unwrap(), p(&[2, 3, 1]));
        assert_eq!(bracket_insertion(&p(&[1, 2]), &three).unwrap_err(), Error::PartitionSize { partition: 3, size: 2 });
    }

    #[test]
    fn conditional_class_map_examples() {
        let three = Partition::single_cycle(3);
        assert_eq!(conditional_class_map(&Permutation::identity(3), &three).unwrap(), p(&[2, 3, 1]));
        let lambda = Partition::new(vec![4, 2]).unwrap();
        for s in Permutation::all(6) {
            assert_eq!(conditional_class_map(&s, &lambda).unwrap().cycle_type(), lambda);
        }
    }

    #[test]
    fn sqrt_rearrangement_examples() {
        let gamma = cyc(6, &[&[6, 1, 2, 3, 4, 5]]);
        assert_eq!(sqrt_rearrangement(&gamma), cyc(6, &[&[6, 2, 4, 1, 3, 5]]));
        let odd = cyc(3, &[&[3, 1, 2]]);
        assert_eq!(sqrt_rearrangement(&odd), cyc(3, &[&[3, 2, 1]]));
        assert_eq!(sqrt_rearrangement(&odd), odd.square());
    }

    #[test]
    fn bracket_split_examples() {
        let t = cyc(6, &[&[6, 2, 4, 1, 3, 5]]);
        assert_eq!(bracket_split(&t), cyc(6, &[&[6, 2, 4], &[1, 3, 5]]));
        assert_eq!(bracket_split(&t), cyc(6, &[&[6, 2, 4], &[5, 1, 3]]));
        let odd_only = cyc(8, &[&[5, 1, 3], &[8, 2, 6, 4, 7]]);
        assert_eq!(bracket_split(&odd_only), odd_only);
        let gamma = cyc(6, &[&[6, 1, 2, 3, 4, 5]]);
        assert_eq!(bracket_split(&sqrt_rearrangement(&gamma)), gamma.square());
    }

    #[test]
    fn crp_outcomes_from_identity() {
        let id2 = Permutation::identity(2);
        assert_eq!(crp_insert(&id2, None), p(&[1, 2, 3]));
        assert_eq!(crp_insert(&id2, Some(1)), p(&[3, 2, 1]));
        assert_eq!(crp_insert(&id2, Some(2)), p(&[1, 3, 2]));
    }

    #[test]
    fn cyclify_examples() {
        assert_eq!(cyclify(&p(&[2, 3, 1]), 1).unwrap(), p(&[2, 3, 1]));
        for s in Permutation::all(5) {
            for i0 in 1..=5 {
                assert_eq!(cyclify(&s, i0).unwrap().cycle_type(), Partition::single_cycle(5));
            }
        }
        assert!(cyclify(&p(&[2, 3, 1]), 4).is_err());
        assert!(cyclify(&p(&[2, 3, 1]), 0).is_err());
    }
}
