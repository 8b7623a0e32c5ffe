//! Experiment runner, oracles and file formats on top of `permlab-core`.

pub mod config;
mod error;
pub mod experiments;
pub mod io;
pub mod oracle;
pub mod parallel;
pub mod table;

pub use config::{Conditioning, ExperimentConfig, ExperimentId, Format, Options, OutputSpec, Sampler};
pub use error::{Error, Result};
pub use experiments::run;
pub use parallel::Workers;
pub use table::{Row, Table};
