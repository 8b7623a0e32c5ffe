//! Empirical distributions, Kolmogorov distances, independence gaps,
//! de-Poissonization and reference limit laws.

mod depoisson;
mod empirical;
mod gap;
mod reference;
mod summary;

pub use depoisson::{depoisson_sandwich, depoissonize, poisson_window, Orientation, Sandwich, SandwichMode};
pub use empirical::{kolmogorov_distance, kolmogorov_distance_on_grid, ks_noise_floor, EmpiricalDistribution, Law};
pub use gap::{independence_gap, independence_gap_batch_std_err, PairedSample};
pub use reference::{std_normal_cdf, ReferenceLaw};
pub use summary::{moment_summary, MomentEstimate};
