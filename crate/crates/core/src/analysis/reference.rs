use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Analytic limit laws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ReferenceLaw {
    StdNormal,
    /// Law of `√E` with `E` exponential of the given mean:
    /// `F(b) = 1 − exp(−b²/mean)` for `b ≥ 0`.
    SqrtExp {
        mean: f64,
    },
}

impl ReferenceLaw {
    pub fn sqrt_exp(mean: f64) -> Result<Self> {
        if mean > 0.0 && mean.is_finite() {
            Ok(Self::SqrtExp { mean })
        } else {
            Err(Error::OutOfRange("sqrt_exp mean must be > 0"))
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::StdNormal => std_normal_cdf(x),
            Self::SqrtExp { mean } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -libm::expm1(-x * x / mean)
                }
            }
        }
    }

    /// Inverse CDF for `p ∈ (0, 1)`; only available in closed form for
    /// `SqrtExp`.
    pub fn quantile(&self, p: f64) -> Option<f64> {
        match *self {
            Self::SqrtExp { mean } if (0.0..1.0).contains(&p) => Some(libm::sqrt(-mean * libm::log1p(-p))),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::StdNormal => "std_normal",
            Self::SqrtExp { .. } => "sqrt_exp",
        }
    }
}

/// `Φ(x) = erfc(−x/√2)/2`, with `erfc` from the fdlibm rational
/// approximations (`libm` crate, error below 1 ulp over the real line).
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}
