use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Index range `[lo, hi]` of Poisson(`m`) mass kept by [`depoissonize`].
///
/// For `m ≥ 25` this is `m ± 12√m`, leaving out less than `10⁻⁹` of the
/// mass. Below 25 it is `[0, max(⌈m + 12√m⌉, 40)]`.
pub fn poisson_window(m: f64) -> (usize, usize) {
    let spread = 12.0 * libm::sqrt(m);
    let hi = libm::ceil(m + spread) as usize;
    if m >= 25.0 {
        (libm::floor(m - spread) as usize, hi)
    } else {
        (0, hi.max(40))
    }
}

/// `φ_A(m) = e^{−m} Σ_n A_n mⁿ/n!`, truncated to [`poisson_window`].
pub fn depoissonize(a: &[f64], m: f64) -> Result<f64> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::OutOfRange("Poisson mean must be positive"));
    }
    if a.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::OutOfRange("sequence values must lie in [0, 1]"));
    }
    let (lo, hi) = poisson_window(m);
    if hi >= a.len() {
        return Err(Error::WindowExceedsRange { needed: hi + 1, available: a.len() });
    }
    let ln_m = libm::log(m);
    let mut sum = 0.0;
    let mut comp = 0.0;
    for (n, &an) in a.iter().enumerate().take(hi + 1).skip(lo) {
        let pmf = libm::exp(-m + n as f64 * ln_m - libm::lgamma(n as f64 + 1.0));
        // Kahan summation
        let y = pmf * an - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SandwichMode {
    Monotone,
    /// `A_{n+1} ≤ A_n (1 + c/n^δ)` with `δ > 1/2`.
    Pseudo {
        c: f64,
        delta: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Increasing,
    Decreasing,
}

/// Outcome of [`depoisson_sandwich`]. `lower` and `upper` are the Poisson
/// transforms at `N − √(N log N)` and `N + √(N log N)`; the two `holds_*`
/// flags test `A_N` against them in each orientation, widened by `slack`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sandwich {
    pub n: usize,
    pub a_n: f64,
    pub lower: f64,
    pub upper: f64,
    pub slack: f64,
    pub holds_increasing: bool,
    pub holds_decreasing: bool,
    /// Trend of the sequence across the window.
    pub orientation: Orientation,
    /// The flag matching `orientation`.
    pub holds: bool,
}

pub fn depoisson_sandwich(a: &[f64], n: usize, mode: SandwichMode, c_const: f64) -> Result<Sandwich> {
    if n < 2 {
        return Err(Error::OutOfRange("sandwich needs N >= 2"));
    }
    let a_n = *a.get(n).ok_or(Error::WindowExceedsRange { needed: n + 1, available: a.len() })?;
    let nf = n as f64;
    let half_width = libm::sqrt(nf * libm::log(nf));
    let (mu, nu) = (nf - half_width, nf + half_width);
    if mu <= 0.0 {
        return Err(Error::OutOfRange("N is too small for the sandwich window"));
    }
    let lower = depoissonize(a, mu)?;
    let upper = depoissonize(a, nu)?;
    let lo_idx = libm::floor(mu) as usize;
    let hi_idx = libm::ceil(nu) as usize;
    let orientation = if a[hi_idx] >= a[lo_idx] { Orientation::Increasing } else { Orientation::Decreasing };

    let slack = match mode {
        SandwichMode::Monotone => {
            let window = &a[poisson_window(mu).0..=poisson_window(nu).1];
            let up = window.windows(2).all(|w| w[0] <= w[1]);
            let down = window.windows(2).all(|w| w[0] >= w[1]);
            if !(up || down) {
                return Err(Error::OutOfRange("sequence is not monotone over the window"));
            }
            c_const / (nf * nf)
        }
        SandwichMode::Pseudo { c, delta } => {
            if delta <= 0.5 {
                return Err(Error::OutOfRange("pseudo-monotone mode needs delta > 1/2"));
            }
            for k in 1..a.len() - 1 {
                if a[k] * (1.0 + c / libm::pow(k as f64, delta)) < a[k + 1] {
                    return Err(Error::RatioConditionViolated(k));
                }
            }
            c_const * libm::log(nf) / libm::pow(nf, delta - 0.5)
        }
    };
    let holds_increasing = lower - slack <= a_n && a_n <= upper + slack;
    let holds_decreasing = upper - slack <= a_n && a_n <= lower + slack;
    let holds = match orientation {
        Orientation::Increasing => holds_increasing,
        Orientation::Decreasing => holds_decreasing,
    };
    Ok(Sandwich { n, a_n, lower, upper, slack, holds_increasing, holds_decreasing, orientation, holds })
}
