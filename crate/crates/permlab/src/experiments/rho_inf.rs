//! E2: the corner law of `ρ_∞`.

use permlab_core::analysis::{
    kolmogorov_distance, ks_noise_floor, moment_summary, EmpiricalDistribution, ReferenceLaw,
};
use permlab_core::hammersley::{sample_points, to_permutation, SampleMode};
use permlab_core::metrics::spearman_rho_inf;
use permlab_core::Permutation;

use super::Ctx;
use crate::table::{Row, Table};
use crate::Result;

/// Exponential means the two statistics are compared against.
const TWO_SIDED_MEANS: [f64; 2] = [0.5, 1.0];
const ONE_SIDED_MEANS: [f64; 2] = [1.0, 2.0];

pub(super) fn rho_inf_law(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let poissonized = cfg.options.poissonized;
    let mut table = Table::new(cfg.clone());
    for &n in &cfg.sizes {
        let tag = if poissonized { format!("poisson/nu={n}") } else { format!("uniform/n={n}") };
        let pairs = ctx.workers.replicas(cfg.seed, &ctx.label(&tag), cfg.samples_per_size, |rng| {
            let (size, sigma) = if poissonized {
                let p = sample_points(SampleMode::Poisson(n as f64), rng)?;
                if p.is_empty() {
                    return Ok(None);
                }
                (p.len(), to_permutation(&p)?)
            } else {
                (n, Permutation::random(n, rng))
            };
            let r = spearman_rho_inf(&sigma);
            let scale = (n as f64).sqrt();
            let two = f64::from(r.h) / scale;
            let one = (size as f64 - f64::from(r.one_sided)) / scale;
            Ok(Some((two, one)))
        });
        let pairs: Vec<(f64, f64)> =
            pairs.into_iter().collect::<permlab_core::Result<Vec<_>>>()?.into_iter().flatten().collect();
        let two: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let one: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        if let Some(dir) = &cfg.options.distribution_dir {
            for (name, values) in [("rho_inf", &two), ("rho_inf_one_sided", &one)] {
                let path = dir.join(format!("{}_{name}_{n}.csv", cfg.experiment_id.tag()));
                crate::io::write_distribution_csv(&path, values)?;
            }
        }
        for (name, values, means) in [("rho_inf", two, TWO_SIDED_MEANS), ("rho_inf_one_sided", one, ONE_SIDED_MEANS)] {
            let count = values.len();
            let d = EmpiricalDistribution::new(values)?;
            for mean in means {
                let ks = kolmogorov_distance(&d, ReferenceLaw::sqrt_exp(mean)?)?;
                table.push(
                    Row::new(n, count, name, &format!("ks_sqrt_exp_{mean}"), ks)
                        .err(ks_noise_floor(count, None))
                        .detail(if poissonized { "poissonized" } else { "fixed_n" }),
                );
            }
            let m = moment_summary(&d, 2)?;
            table.push(Row::new(n, count, name, "mean", m[0].value).err(m[0].std_err));
            table.push(Row::new(n, count, name, "second_moment", m[1].value).err(m[1].std_err));
        }
    }
    Ok(table)
}
