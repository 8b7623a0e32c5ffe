//! Exact means and variances under the uniform measure on `S_n`.
//!
//! For `ρ_q` and the oscillation family, write the statistic as a sum of
//! kernel terms `w(a, b) = |a − b|^q` and split `E[ρ²]` into pairs of terms
//! with the same index, sharing one symbol, or disjoint. Every piece reduces
//! to the four kernel sums `T = Σ w`, `S₂ = Σ w²`, row sums `R_a` and
//! `P = Σ R_a²`, which only depend on `|a − b|` and so cost `O(n)`.
//! Results are exact rationals while they fit in `i128`; past that the same
//! formulas are evaluated in `f64`.

use core::ops::{Add, Div, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::{Statistic, StatisticId};
use crate::{Error, Result};

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: i128,
    pub den: i128,
}

impl Ratio {
    pub fn new(num: i128, den: i128) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i128;
        let s = if den < 0 { -1 } else { 1 };
        Some(Self { num: s * num / g, den: s * den / g })
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact rational arithmetic that poisons itself on overflow.
#[derive(Clone, Copy)]
struct Exact(Option<Ratio>);

impl Exact {
    fn int(v: i128) -> Self {
        Self(Some(Ratio { num: v, den: 1 }))
    }
}

impl Add for Exact {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0.zip(o.0).and_then(|(a, b)| {
            let g = gcd(a.den as u128, b.den as u128) as i128;
            let lhs = a.num.checked_mul(b.den / g)?;
            let rhs = b.num.checked_mul(a.den / g)?;
            Ratio::new(lhs.checked_add(rhs)?, (a.den / g).checked_mul(b.den)?)
        }))
    }
}

impl Sub for Exact {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: Self) -> Self {
        self + Self(o.0.and_then(|r| Some(Ratio { num: r.num.checked_neg()?, den: r.den })))
    }
}

impl Mul for Exact {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0.zip(o.0).and_then(|(a, b)| {
            let g1 = gcd(a.num.unsigned_abs(), b.den as u128).max(1) as i128;
            let g2 = gcd(b.num.unsigned_abs(), a.den as u128).max(1) as i128;
            Ratio::new((a.num / g1).checked_mul(b.num / g2)?, (a.den / g2).checked_mul(b.den / g1)?)
        }))
    }
}

impl Div for Exact {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        let inv = o.0.and_then(|r| Ratio::new(r.den, r.num));
        self * Self(inv)
    }
}

trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn from_i(v: i128) -> Self;
    fn ipow(base: u64, q: u32) -> Self;
}

impl Scalar for Exact {
    fn from_i(v: i128) -> Self {
        Self::int(v)
    }
    fn ipow(base: u64, q: u32) -> Self {
        Self((base as i128).checked_pow(q).map(|num| Ratio { num, den: 1 }))
    }
}

impl Scalar for f64 {
    fn from_i(v: i128) -> Self {
        v as f64
    }
    fn ipow(base: u64, q: u32) -> Self {
        libm::pow(base as f64, f64::from(q))
    }
}

/// Kernel sums for `w(a, b) = |a − b|^q` over ordered pairs of `[n]`.
struct KernelSums<S> {
    total: S,
    squares: S,
    row_squares: S,
}

fn kernel_sums<S: Scalar>(n: usize, q: u32) -> KernelSums<S> {
    let zero = S::from_i(0);
    let mut total = zero;
    let mut squares = zero;
    // prefix[m] = Σ_{d=1}^{m} d^q
    let mut prefix = alloc::vec::Vec::with_capacity(n);
    prefix.push(zero);
    for d in 1..n {
        let w = S::ipow(d as u64, q);
        let mult = S::from_i(2 * (n - d) as i128);
        total = total + mult * w;
        squares = squares + mult * w * w;
        let last = prefix[d - 1];
        prefix.push(last + w);
    }
    let mut row_squares = zero;
    for i in 0..n {
        let r = prefix[i] + prefix[n - 1 - i];
        row_squares = row_squares + r * r;
    }
    KernelSums { total, squares, row_squares }
}

fn falling(n: usize, k: usize) -> i128 {
    (0..k).map(|j| n as i128 - j as i128).product()
}

/// (mean, E[X²]) of `ρ_q`.
fn rho_q_moments<S: Scalar>(n: usize, q: u32) -> (S, S) {
    let k: KernelSums<S> = kernel_sums(n, q);
    let nn = S::from_i(n as i128);
    let mean = k.total / nn;
    let two = S::from_i(2);
    let cross = k.total * k.total - two * k.row_squares + k.squares;
    let second = k.squares / nn + cross / S::from_i(falling(n, 2));
    (mean, second)
}

/// (mean, E[X²]) of the cyclic skip-`skip` oscillation, `n >= 2`.
fn oscillation_moments<S: Scalar>(n: usize, q: u32, skip: usize) -> (S, S) {
    let k: KernelSums<S> = kernel_sums(n, q);
    let f = |j| S::from_i(falling(n, j));
    let mean = S::from_i(n as i128) * k.total / f(2);
    let e_same = k.squares / f(2);
    let e_adjacent = if n >= 3 { (k.row_squares - k.squares) / f(3) } else { S::from_i(0) };
    let e_disjoint = if n >= 4 {
        let (two, four) = (S::from_i(2), S::from_i(4));
        (k.total * k.total - four * k.row_squares + two * k.squares) / f(4)
    } else {
        S::from_i(0)
    };
    let second = if !(2 * skip).is_multiple_of(n) {
        // each term shares one symbol with exactly two others
        let nn = n as i128;
        S::from_i(nn) * e_same + S::from_i(2 * nn) * e_adjacent + S::from_i(nn * (nn - 3).max(0)) * e_disjoint
    } else {
        // skip = n/2: term i and term i+skip coincide
        let m = (n / 2) as i128;
        S::from_i(4) * (S::from_i(m) * e_same + S::from_i(m * (m - 1)) * e_disjoint)
    };
    (mean, second)
}

fn kendall_moments<S: Scalar>(n: usize) -> (S, S) {
    let n = n as i128;
    let mean = S::from_i(n * (n - 1)) / S::from_i(4);
    let var = S::from_i(n * (n - 1) * (2 * n + 5)) / S::from_i(72);
    (mean, var + mean * mean)
}

fn cycle_count_moments<S: Scalar>(n: usize) -> (S, S) {
    // number of cycles is a sum of independent Bernoulli(1/k)
    let mut mean = S::from_i(0);
    let mut var = S::from_i(0);
    for k in (1..=n as i128).rev() {
        let p = S::from_i(1) / S::from_i(k);
        mean = mean + p;
        var = var + p - p * p;
    }
    (mean, var + mean * mean)
}

fn moments_of<S: Scalar>(n: usize, stat: &Statistic) -> Result<(S, S)> {
    Ok(match stat.id {
        StatisticId::RhoQ => rho_q_moments(n, stat.q),
        StatisticId::KendallTau => kendall_moments(n),
        StatisticId::CycleCount => cycle_count_moments(n),
        StatisticId::Oscillation => {
            if stat.skip == 0 || stat.skip >= n {
                return Err(Error::OutOfRange("skip must satisfy 1 <= skip < n"));
            }
            oscillation_moments(n, stat.q, stat.skip)
        }
        _ => return Err(Error::Unsupported("exact moments")),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMoments {
    pub mean: Ratio,
    pub variance: Ratio,
}

/// Mean and standard deviation used to put a statistic on the standard
/// normal scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub statistic: Statistic,
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub method: Method,
    /// Standard error of `mean` for Monte Carlo estimates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub std_err: Option<f64>,
    /// Present when the moments fit exactly in `i128` rationals.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactMoments>,
}

impl NormalizationParams {
    /// Moments estimated from an i.i.d. sample of the statistic.
    pub fn monte_carlo(statistic: Statistic, n: usize, sample: &[f64]) -> Result<Self> {
        if sample.len() < 2 {
            return Err(Error::EmptySample);
        }
        let m = sample.len() as f64;
        let mean = sample.iter().sum::<f64>() / m;
        let var = sample.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0);
        if var.is_nan() || var <= 0.0 {
            return Err(Error::DegenerateVariance);
        }
        let std_dev = libm::sqrt(var);
        Ok(Self {
            statistic,
            n,
            mean,
            std_dev,
            method: Method::MonteCarlo,
            std_err: Some(std_dev / libm::sqrt(m)),
            exact: None,
        })
    }

    pub fn normalize(&self, value: f64) -> f64 {
        (value - self.mean) / self.std_dev
    }
}

/// Exact moments of `rho_q`, `kendall_tau`, `cycle_count` or `oscillation`
/// under the uniform measure on `S_n`.
pub fn exact_moments(n: usize, statistic: &Statistic) -> Result<NormalizationParams> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be >= 1"));
    }
    if statistic.q == 0 {
        return Err(Error::OutOfRange("q must be >= 1"));
    }
    let (mean_x, second_x): (Exact, Exact) = moments_of(n, statistic)?;
    let var_x = second_x - mean_x * mean_x;
    let (mean, variance, exact) = match (mean_x.0, var_x.0) {
        (Some(m), Some(v)) => (m.to_f64(), v.to_f64(), Some(ExactMoments { mean: m, variance: v })),
        _ => {
            let (m, s): (f64, f64) = moments_of(n, statistic)?;
            (m, s - m * m, None)
        }
    };
    if variance.is_nan() || variance <= 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok(NormalizationParams {
        statistic: *statistic,
        n,
        mean,
        std_dev: libm::sqrt(variance),
        method: Method::Exact,
        std_err: None,
        exact,
    })
}

/// `(value − mean) / std_dev`.
pub fn normalize(value: f64, params: &NormalizationParams) -> Result<f64> {
    if params.std_dev.is_nan() || params.std_dev <= 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok(params.normalize(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn footrule_n3() {
        let p = exact_moments(3, &Statistic::rho_q(1)).unwrap();
        let e = p.exact.unwrap();
        assert_eq!(e.mean, Ratio { num: 8, den: 3 });
        assert_eq!(e.variance, Ratio { num: 20, den: 9 });
    }

    #[test]
    fn cycle_count_n3_is_harmonic() {
        let p = exact_moments(3, &Statistic::new(StatisticId::CycleCount)).unwrap();
        assert_eq!(p.exact.unwrap().mean, Ratio { num: 11, den: 6 });
    }

    #[test]
    fn large_n_falls_back_to_float() {
        let p = exact_moments(2000, &Statistic::new(StatisticId::CycleCount)).unwrap();
        assert!(p.exact.is_none());
        let h: f64 = (1..=2000).map(|k| 1.0 / k as f64).sum();
        assert!((p.mean - h).abs() < 1e-12);
        // Kendall stays exact
        let k = exact_moments(2000, &Statistic::new(StatisticId::KendallTau)).unwrap();
        assert_eq!(k.exact.unwrap().mean, Ratio { num: 999_500, den: 1 });
    }

    #[test]
    fn footrule_mean_is_quadratic() {
        // E ρ₁ = (n² − 1)/3
        for n in [10usize, 100, 1000, 5000] {
            let p = exact_moments(n, &Statistic::rho_q(1)).unwrap();
            let expect = ((n * n - 1) as f64) / 3.0;
            assert!((p.mean - expect).abs() < 1e-6 * expect);
            assert!(p.mean / (n * n) as f64 > 0.3 && p.mean / ((n * n) as f64) < 0.34);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            exact_moments(5, &Statistic::new(StatisticId::Lis)).unwrap_err(),
            Error::Unsupported("exact moments")
        );
        assert_eq!(exact_moments(1, &Statistic::rho_q(1)).unwrap_err(), Error::DegenerateVariance);
        let mut p = exact_moments(4, &Statistic::rho_q(2)).unwrap();
        assert_eq!(normalize(p.mean, &p), Ok(0.0));
        assert!((normalize(p.mean + p.std_dev, &p).unwrap() - 1.0).abs() < 1e-15);
        p.std_dev = 0.0;
        assert!(normalize(1.0, &p).is_err());
    }
}
