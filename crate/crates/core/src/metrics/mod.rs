//! Scalar permutation statistics and their normalization.
//!
//! Statistics return exact integers; conversion to `f64` and affine
//! normalization happen only at analysis time.

mod class;
mod kendall;
mod moments;
mod oscillation;
mod rsk;
mod spearman;
mod statistic;

pub use class::{class_statistics, ClassStatistics};
pub use kendall::kendall_tau;
pub use moments::{exact_moments, normalize, ExactMoments, Method, NormalizationParams, Ratio};
pub use oscillation::{oscillation, rho_q_on_square, second_order_oscillation};
pub use rsk::{lds_length, lis_length, rsk_and_greene, rsk_shape, Greene, YoungShape};
pub use spearman::{spearman_rho_inf, spearman_rho_q, RhoInf};
pub use statistic::{Statistic, StatisticId};

pub(crate) fn pow_u128(base: u64, q: u32) -> u128 {
    (base as u128).pow(q)
}
