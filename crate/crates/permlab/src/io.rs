//! File formats: permutations, partitions and point samples as JSON,
//! distributions as single-column CSV, summaries as JSON.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use permlab_core::analysis::{moment_summary, EmpiricalDistribution, MomentEstimate};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn create(path: &Path) -> Result<File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path).map_err(|e| Error::io(path, e))
}

/// Reads any JSON value, e.g. a [`Permutation`](permlab_core::Permutation),
/// a [`Partition`](permlab_core::Partition) or a
/// [`PointSample`](permlab_core::hammersley::PointSample).
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut out = BufWriter::new(create(path)?);
    serde_json::to_writer(&mut out, value)?;
    std::io::Write::flush(&mut out).map_err(|e| Error::io(path, e))
}

/// One `value` column, one row per sample.
pub fn write_distribution_csv(path: &Path, values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["value"])?;
    for v in values {
        w.write_record([v.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_distribution_csv(path: &Path) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_path(path)?;
    let headers = r.headers()?.clone();
    if headers.len() != 1 || &headers[0] != "value" {
        return Err(Error::Config(format!("{}: expected a single `value` column", path.display())));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            rec[0]
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("{}: bad value `{}`: {e}", path.display(), &rec[0])))
        })
        .collect()
}

/// Summary of an empirical distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub samples: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// `(p, lower p-quantile)` pairs
    pub quantiles: Vec<(f64, f64)>,
    pub moments: Vec<MomentEstimate>,
}

impl Summary {
    pub const PROBABILITIES: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

    pub fn of(d: &EmpiricalDistribution, max_order: u32) -> Result<Self> {
        let xs = d.samples();
        Ok(Self {
            samples: d.len(),
            mean: d.mean(),
            min: xs[0],
            max: xs[xs.len() - 1],
            quantiles: Self::PROBABILITIES.iter().map(|&p| (p, d.quantile(p))).collect(),
            moments: moment_summary(d, max_order)?,
        })
    }
}

pub fn write_summary_json(path: &Path, summary: &Summary) -> Result<()> {
    let text = serde_json::to_string_pretty(summary)? + "\n";
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
