//! The experiment catalogue (E1–E8) and the helpers they share.

mod bridge;
mod clt;
mod conditional;
mod independence;
mod monotonicity;
mod rho_inf;

use permlab_core::analysis::{
    kolmogorov_distance, ks_noise_floor, moment_summary, EmpiricalDistribution, ReferenceLaw,
};
use permlab_core::metrics::{exact_moments, NormalizationParams, Statistic, StatisticId};
use permlab_core::Permutation;

use crate::config::{ExperimentConfig, ExperimentId};
use crate::parallel::Workers;
use crate::table::{Row, Table};
use crate::Result;

/// Runs the configured experiment. Output is a pure function of the config.
pub fn run(config: &ExperimentConfig, workers: &Workers) -> Result<Table> {
    config.validate()?;
    let ctx = Ctx { cfg: config, workers };
    match config.experiment_id {
        ExperimentId::CltRho => clt::clt_rho(&ctx),
        ExperimentId::RhoInfLaw => rho_inf::rho_inf_law(&ctx),
        ExperimentId::ConditionalClass => conditional::conditional_class(&ctx),
        ExperimentId::IndependencePairs => independence::independence_pairs(&ctx),
        ExperimentId::OscillationClt => clt::oscillation_clt(&ctx),
        ExperimentId::Monotonicity => monotonicity::monotonicity(&ctx),
        ExperimentId::SquareLaw => clt::square_law(&ctx),
        ExperimentId::DepoissonBridge => bridge::depoisson_bridge(&ctx),
    }
}

pub(crate) struct Ctx<'a> {
    pub cfg: &'a ExperimentConfig,
    pub workers: &'a Workers,
}

impl Ctx<'_> {
    fn label(&self, parts: &str) -> String {
        format!("{}/{parts}", self.cfg.experiment_id.tag())
    }

    /// One column per statistic, evaluated on `samples` uniform
    /// permutations of size `n`.
    fn uniform_columns(&self, n: usize, stats: &[Statistic], tag: &str) -> Result<Vec<Vec<f64>>> {
        let rows = self.workers.replicas(
            self.cfg.seed,
            &self.label(&format!("{tag}/n={n}")),
            self.cfg.samples_per_size,
            |rng| {
                let s = Permutation::random(n, rng);
                stats.iter().map(|st| st.evaluate(&s)).collect::<permlab_core::Result<Vec<f64>>>()
            },
        );
        columns(rows, stats.len())
    }
}

/// Transposes per-replica rows into per-statistic columns.
fn columns(rows: Vec<permlab_core::Result<Vec<f64>>>, width: usize) -> Result<Vec<Vec<f64>>> {
    let mut cols = vec![Vec::with_capacity(rows.len()); width];
    for r in rows {
        for (c, v) in cols.iter_mut().zip(r?) {
            c.push(v);
        }
    }
    Ok(cols)
}

/// Affine map putting a statistic on its limiting scale.
#[derive(Debug, Clone)]
pub(crate) enum Scale {
    Params(NormalizationParams),
    /// `(n − v)/√n`
    Corner {
        n: f64,
    },
    /// `(v − c√n)/n^{1/6}`
    Ulam {
        n: f64,
        c: f64,
    },
}

impl Scale {
    /// Exact moments when available, the fixed scalings for `ρ_∞` and the
    /// RSK statistics, and the sample's own moments otherwise.
    pub fn for_statistic(stat: &Statistic, n: usize, sample: &[f64], centering: f64) -> Result<Self> {
        Ok(match stat.id {
            StatisticId::RhoInf => Scale::Corner { n: n as f64 },
            StatisticId::Lis | StatisticId::GreeneI | StatisticId::GreeneD => Scale::Ulam { n: n as f64, c: centering },
            _ => match exact_moments(n, stat) {
                Ok(p) => Scale::Params(p),
                Err(_) => Scale::Params(NormalizationParams::monte_carlo(*stat, n, sample)?),
            },
        })
    }

    pub fn apply(&self, v: f64) -> f64 {
        match self {
            Scale::Params(p) => p.normalize(v),
            Scale::Corner { n } => (n - v) / n.sqrt(),
            Scale::Ulam { n, c } => (v - c * n.sqrt()) / n.powf(1.0 / 6.0),
        }
    }

    pub fn method(&self) -> &'static str {
        match self {
            Scale::Params(p) if p.exact.is_some() => "exact",
            Scale::Params(p) if p.std_err.is_none() => "exact_float",
            Scale::Params(_) => "monte_carlo",
            Scale::Corner { .. } => "corner",
            Scale::Ulam { .. } => "ulam",
        }
    }
}

/// Rows comparing a sample with the standard normal: KS distance, mean and
/// second moment.
fn normal_rows(n: usize, statistic: &str, detail: &str, z: Vec<f64>) -> Result<Vec<Row>> {
    let count = z.len();
    let d = EmpiricalDistribution::new(z)?;
    let ks = kolmogorov_distance(&d, ReferenceLaw::StdNormal)?;
    let m = moment_summary(&d, 2)?;
    Ok(vec![
        Row::new(n, count, statistic, "ks_std_normal", ks).err(ks_noise_floor(count, None)).detail(detail),
        Row::new(n, count, statistic, "mean", m[0].value).err(m[0].std_err).detail(detail),
        Row::new(n, count, statistic, "second_moment", m[1].value).err(m[1].std_err).detail(detail),
    ])
}

/// KS distance between two samples with its noise floor.
fn two_sample_row(n: usize, statistic: &str, quantity: &str, a: &[f64], b: &[f64]) -> Result<Row> {
    let da = EmpiricalDistribution::new(a.to_vec())?;
    let db = EmpiricalDistribution::new(b.to_vec())?;
    let ks = kolmogorov_distance(&da, &db)?;
    Ok(Row::new(n, a.len().min(b.len()), statistic, quantity, ks).err(ks_noise_floor(a.len(), Some(b.len()))))
}

fn quantile(sample: &[f64], p: f64) -> Result<f64> {
    Ok(EmpiricalDistribution::new(sample.to_vec())?.quantile(p))
}
