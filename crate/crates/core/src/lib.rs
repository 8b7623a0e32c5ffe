//! Permutation statistics, conjugacy-class bijections, Hammersley point
//! samples and the empirical-distribution tools used to study their limit
//! laws.
//!
//! The crate is `no_std` and only needs `alloc`. Every interface speaks
//! 1-based symbols (`1..=n`); storage is 0-based internally.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod bijections;
mod error;
pub mod hammersley;
pub mod metrics;
mod partition;
mod perm;
pub mod rng;

pub use error::{Error, Result};
pub use partition::Partition;
pub use perm::{Permutation, Permutations};
