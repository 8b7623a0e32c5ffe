use alloc::vec::Vec;

use super::ReferenceLaw;
use crate::{Error, Result};

/// A nonempty sample sorted ascending, viewed as the right-continuous step
/// CDF `F(x) = #{samples ≤ x} / count`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::NotANumber);
        }
        samples.sort_unstable_by(f64::total_cmp);
        Ok(Self { samples })
    }

    /// Merges two distributions (sorted-run merge), so construction can be
    /// folded over independently built parts in any order.
    pub fn merge(&self, other: &Self) -> Self {
        let (a, b) = (&self.samples, &other.samples);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].total_cmp(&b[j]).is_le() {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { samples: out }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.len() as f64
    }

    /// `F(x−)`.
    pub fn cdf_left(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s < x) as f64 / self.len() as f64
    }

    /// Lower empirical quantile.
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.len();
        let idx = libm::ceil(p.clamp(0.0, 1.0) * n as f64) as usize;
        self.samples[idx.clamp(1, n) - 1]
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }

    /// Distinct values with their right-continuous CDF value.
    fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.len() as f64;
        let s = &self.samples;
        (0..s.len()).filter(move |&i| i + 1 == s.len() || s[i + 1] != s[i]).map(move |i| (s[i], (i + 1) as f64 / n))
    }
}

/// Either side of a Kolmogorov distance.
#[derive(Debug, Clone, Copy)]
pub enum Law<'a> {
    Empirical(&'a EmpiricalDistribution),
    Reference(ReferenceLaw),
}

impl<'a> From<&'a EmpiricalDistribution> for Law<'a> {
    fn from(d: &'a EmpiricalDistribution) -> Self {
        Law::Empirical(d)
    }
}

impl From<ReferenceLaw> for Law<'_> {
    fn from(r: ReferenceLaw) -> Self {
        Law::Reference(r)
    }
}

/// `sup_x |F(x) − G(x)|`, exact whenever at least one side is empirical.
pub fn kolmogorov_distance<'a>(a: impl Into<Law<'a>>, b: impl Into<Law<'a>>) -> Result<f64> {
    match (a.into(), b.into()) {
        (Law::Empirical(a), Law::Empirical(b)) => Ok(two_sample(a, b)),
        (Law::Empirical(e), Law::Reference(r)) | (Law::Reference(r), Law::Empirical(e)) => Ok(one_sample(e, &r)),
        (Law::Reference(_), Law::Reference(_)) => Err(Error::NeedsGrid),
    }
}

/// Kolmogorov distance between two analytic laws, evaluated on `grid`.
pub fn kolmogorov_distance_on_grid(a: &ReferenceLaw, b: &ReferenceLaw, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(grid.iter().map(|&x| (a.cdf(x) - b.cdf(x)).abs()).fold(0.0, f64::max))
}

fn one_sample(e: &EmpiricalDistribution, law: &ReferenceLaw) -> f64 {
    // the sup is attained at a jump point, from the left or the right
    let mut prev = 0.0;
    let mut d: f64 = 0.0;
    for (x, fx) in e.jumps() {
        let g = law.cdf(x);
        d = d.max((fx - g).abs()).max((prev - g).abs());
        prev = fx;
    }
    d
}

fn two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let (sa, sb) = (a.samples(), b.samples());
    let (na, nb) = (sa.len() as f64, sb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < sa.len() || j < sb.len() {
        let x = match (sa.get(i), sb.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => unreachable!(),
        };
        while i < sa.len() && sa[i] <= x {
            i += 1;
        }
        while j < sb.len() && sb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Typical spread of the Kolmogorov distance under the null: the standard
/// deviation of the Kolmogorov limit law (≈ 0.2603) scaled by the
/// effective sample size. `m = None` for one-sample comparisons.
pub fn ks_noise_floor(n: usize, m: Option<usize>) -> f64 {
    const KOLMOGOROV_SD: f64 = 0.260_3;
    let eff = match m {
        None => n as f64,
        Some(m) => (n as f64 * m as f64) / (n + m) as f64,
    };
    KOLMOGOROV_SD / libm::sqrt(eff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ed(v: &[f64]) -> EmpiricalDistribution {
        EmpiricalDistribution::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let a = ed(&[1.0, 2.0, 3.0]);
        assert_eq!(kolmogorov_distance(&a, &a.clone()), Ok(0.0));
        let b = ed(&[1.5, 2.5, 3.5]);
        assert!((kolmogorov_distance(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(kolmogorov_distance(ReferenceLaw::StdNormal, ReferenceLaw::StdNormal), Err(Error::NeedsGrid));
    }

    #[test]
    fn errors() {
        assert_eq!(EmpiricalDistribution::new(vec![]), Err(Error::EmptySample));
        assert_eq!(EmpiricalDistribution::new(vec![f64::NAN]), Err(Error::NotANumber));
    }

    #[test]
    fn cdf_steps() {
        let a = ed(&[3.0, 1.0, 2.0, 2.0]);
        assert_eq!(a.cdf(0.5), 0.0);
        assert_eq!(a.cdf(2.0), 0.75);
        assert_eq!(a.cdf_left(2.0), 0.25);
        assert_eq!(a.cdf(3.0), 1.0);
        assert_eq!(a.quantile(0.5), 2.0);
        assert_eq!(a.merge(&ed(&[0.0])).samples(), &[0.0, 1.0, 2.0, 2.0, 3.0]);
    }

    #[test]
    fn one_sample_against_point_mass_like_law() {
        // single sample at 0 vs N(0,1): sup is 1/2 on either side of the jump
        let d = kolmogorov_distance(&ed(&[0.0]), ReferenceLaw::StdNormal).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn grid_distance() {
        let a = ReferenceLaw::sqrt_exp(0.5).unwrap();
        let b = ReferenceLaw::sqrt_exp(1.0).unwrap();
        let grid: alloc::vec::Vec<f64> = (0..=4000).map(|i| i as f64 / 1000.0).collect();
        let d = kolmogorov_distance_on_grid(&a, &b, &grid).unwrap();
        // max of e^{-u} - e^{-2u} is 1/4 at u = ln 2
        assert!((d - 0.25).abs() < 1e-6);
    }
}
