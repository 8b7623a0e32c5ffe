//! Normal-limit experiments: E1 (Spearman and Kendall), E5 (oscillation)
//! and E7 (the square law).

use permlab_core::bijections::{bracket_split, cyclify, sample_with_cycle_type, sqrt_rearrangement};
use permlab_core::metrics::{exact_moments, oscillation, spearman_rho_q, NormalizationParams, Statistic, StatisticId};
use permlab_core::{Partition, Permutation};

use super::{columns, normal_rows, two_sample_row, Ctx};
use crate::table::{Row, Table};
use crate::Result;

pub(super) fn clt_rho(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let stats: Vec<Statistic> = if cfg.options.statistics.is_empty() {
        cfg.q_or(&[1, 2]).into_iter().map(Statistic::rho_q).chain([Statistic::new(StatisticId::KendallTau)]).collect()
    } else {
        cfg.options.statistics.clone()
    };
    let mut table = Table::new(cfg.clone());
    for &n in &cfg.sizes {
        let cols = ctx.uniform_columns(n, &stats, "uniform")?;
        for (stat, col) in stats.iter().zip(cols) {
            let params = exact_moments(n, stat)?;
            let z = col.iter().map(|&v| params.normalize(v)).collect();
            let detail = format!("normalization={}", if params.exact.is_some() { "exact" } else { "exact_float" });
            for row in normal_rows(n, &stat.label(), &detail, z)? {
                table.push(row);
            }
        }
    }
    Ok(table)
}

pub(super) fn oscillation_clt(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let qs = cfg.q_or(&[1, 2]);
    let mut table = Table::new(cfg.clone());
    for &n in &cfg.sizes {
        let skips: Vec<usize> = cfg.options.skips.iter().copied().filter(|&k| k < n).collect();
        let stats: Vec<Statistic> =
            qs.iter().flat_map(|&q| skips.iter().map(move |&k| Statistic::oscillation(q, k))).collect();
        // per replica: oscillation values, then ρ_q of the cyclified
        // permutation for each q (skip-1 identity check)
        let rows = ctx.workers.replicas(cfg.seed, &ctx.label(&format!("uniform/n={n}")), cfg.samples_per_size, |rng| {
            let s = Permutation::random(n, rng);
            let mut out = stats.iter().map(|st| st.evaluate(&s)).collect::<permlab_core::Result<Vec<f64>>>()?;
            let c = cyclify(&s, 1)?;
            for &q in &qs {
                let direct = oscillation(&s, q, 1)?;
                out.push(f64::from(u8::from(spearman_rho_q(&c, q)? != direct)));
            }
            Ok(out)
        });
        let cols = columns(rows, stats.len() + qs.len())?;
        let cycle = Partition::single_cycle(n);
        let cyc_rows =
            ctx.workers.replicas(cfg.seed, &ctx.label(&format!("single_cycle/n={n}")), cfg.samples_per_size, |rng| {
                let c = sample_with_cycle_type(&cycle, rng);
                qs.iter().map(|&q| Ok(spearman_rho_q(&c, q)? as f64)).collect::<permlab_core::Result<Vec<f64>>>()
            });
        let cyc_cols = columns(cyc_rows, qs.len())?;
        for (stat, col) in stats.iter().zip(&cols) {
            let params = exact_moments(n, stat)?;
            let z: Vec<f64> = col.iter().map(|&v| params.normalize(v)).collect();
            for row in normal_rows(n, &stat.label(), "normalization=exact", z.clone())? {
                table.push(row);
            }
            if stat.skip == 1 {
                let qi = qs.iter().position(|&q| q == stat.q).expect("q listed");
                let zc: Vec<f64> = cyc_cols[qi].iter().map(|&v| params.normalize(v)).collect();
                table.push(two_sample_row(n, &stat.label(), "ks_vs_single_cycle_rho_q", &z, &zc)?);
                let mismatches: f64 = cols[stats.len() + qi].iter().sum();
                table.push(Row::new(n, col.len(), stat.label(), "cyclify_mismatches", mismatches));
            }
        }
    }
    Ok(table)
}

pub(super) fn square_law(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let stats: Vec<Statistic> = cfg.q_or(&[1, 2]).into_iter().map(Statistic::rho_q_square).collect();
    let mut table = Table::new(cfg.clone());
    let pilot_cfg = crate::ExperimentConfig { samples_per_size: cfg.options.pilot_samples, ..cfg.clone() };
    let pilot_ctx = Ctx { cfg: &pilot_cfg, workers: ctx.workers };
    for &n in &cfg.sizes {
        let pilot = pilot_ctx.uniform_columns(n, &stats, "pilot")?;
        let rows = ctx.workers.replicas(cfg.seed, &ctx.label(&format!("uniform/n={n}")), cfg.samples_per_size, |rng| {
            let s = Permutation::random(n, rng);
            let sq = s.square();
            let mut out = stats.iter().map(|st| st.evaluate(&s)).collect::<permlab_core::Result<Vec<f64>>>()?;
            out.push(f64::from(u8::from(bracket_split(&sqrt_rearrangement(&s)) != sq)));
            Ok(out)
        });
        let cols = columns(rows, stats.len() + 1)?;
        for ((stat, col), pilot_col) in stats.iter().zip(&cols).zip(&pilot) {
            let params = NormalizationParams::monte_carlo(*stat, n, pilot_col)?;
            let z = col.iter().map(|&v| params.normalize(v)).collect();
            let detail = format!("normalization=monte_carlo;pilot={}", pilot_col.len());
            for row in normal_rows(n, &stat.label(), &detail, z)? {
                table.push(row);
            }
        }
        let mismatches: f64 = cols[stats.len()].iter().sum();
        table.push(Row::new(n, cfg.samples_per_size, "square", "beta_sqrt_mismatches", mismatches));
    }
    Ok(table)
}
