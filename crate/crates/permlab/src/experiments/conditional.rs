//! E3: statistics conditioned on a cycle type against their unconditional
//! laws.

use permlab_core::bijections::{conditional_class_map, sample_with_cycle_type, symmetrized_class_map};
use permlab_core::metrics::{Statistic, StatisticId};
use permlab_core::Permutation;

use super::{columns, two_sample_row, Ctx, Scale};
use crate::config::{Conditioning, Sampler};
use crate::table::Table;
use crate::Result;

pub(super) fn conditional_class(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let stats: Vec<Statistic> = if cfg.options.statistics.is_empty() {
        cfg.q_or(&[2])
            .into_iter()
            .map(Statistic::rho_q)
            .chain([Statistic::new(StatisticId::KendallTau), Statistic::new(StatisticId::Lis)])
            .collect()
    } else {
        cfg.options.statistics.clone()
    };
    let conditioning = cfg.conditioning.clone().unwrap_or(Conditioning::SingleCycle);
    let mut table = Table::new(cfg.clone());
    for &n in &cfg.sizes {
        let lambda = conditioning.partition(n)?;
        let lambda_label = conditioning.label(n);
        let base = ctx.uniform_columns(n, &stats, "uniform")?;
        let scales = stats
            .iter()
            .zip(&base)
            .map(|(s, col)| Scale::for_statistic(s, n, col, cfg.options.centering))
            .collect::<Result<Vec<_>>>()?;
        let normalize = |cols: &[Vec<f64>]| -> Vec<Vec<f64>> {
            cols.iter().zip(&scales).map(|(c, sc)| c.iter().map(|&v| sc.apply(v)).collect()).collect()
        };
        let base_z = normalize(&base);
        let mut by_sampler = Vec::new();
        for &sampler in &cfg.options.samplers {
            let label = ctx.label(&format!("{}/n={n}", sampler.tag()));
            let rows = ctx.workers.replicas(cfg.seed, &label, cfg.samples_per_size, |rng| {
                let s = match sampler {
                    Sampler::ClassMap => conditional_class_map(&Permutation::random(n, rng), &lambda)?,
                    Sampler::Symmetrized => {
                        let [a, b, c] = [(); 3].map(|_| Permutation::random(n, rng));
                        symmetrized_class_map(&a, &b, &c, &lambda)?
                    }
                    Sampler::BracketFill => sample_with_cycle_type(&lambda, rng),
                };
                stats.iter().map(|st| st.evaluate(&s)).collect::<permlab_core::Result<Vec<f64>>>()
            });
            let z = normalize(&columns(rows, stats.len())?);
            for ((stat, zs), (bz, sc)) in stats.iter().zip(&z).zip(base_z.iter().zip(&scales)) {
                let detail = format!("sampler={};lambda={lambda_label};normalization={}", sampler.tag(), sc.method());
                table.push(two_sample_row(n, &stat.label(), "ks_vs_unconditional", zs, bz)?.detail(detail));
            }
            by_sampler.push((sampler, z));
        }
        // the samplers against each other
        for i in 0..by_sampler.len() {
            for j in i + 1..by_sampler.len() {
                let (a, za) = &by_sampler[i];
                let (b, zb) = &by_sampler[j];
                for (stat, (x, y)) in stats.iter().zip(za.iter().zip(zb)) {
                    let detail = format!("samplers={}~{};lambda={lambda_label}", a.tag(), b.tag());
                    table.push(two_sample_row(n, &stat.label(), "ks_between_samplers", x, y)?.detail(detail));
                }
            }
        }
    }
    Ok(table)
}
