//! E4: independence gaps between pairs of statistics.

use permlab_core::analysis::{independence_gap, independence_gap_batch_std_err, PairedSample};
use permlab_core::metrics::{Statistic, StatisticId};

use super::{Ctx, Scale};
use crate::table::{Row, Table};
use crate::Result;

fn default_pairs(qs: &[u32]) -> Vec<(Statistic, Statistic)> {
    let rho_inf = Statistic::new(StatisticId::RhoInf);
    let cycles = Statistic::new(StatisticId::CycleCount);
    let mut pairs = Vec::new();
    for &q in qs {
        pairs.push((rho_inf, Statistic::rho_q(q)));
        pairs.push((cycles, Statistic::rho_q(q)));
    }
    pairs.extend([
        (cycles, Statistic::new(StatisticId::KendallTau)),
        (rho_inf, Statistic::greene_i(1)),
        (rho_inf, Statistic::greene_d(1)),
        (cycles, Statistic::new(StatisticId::Lis)),
    ]);
    pairs
}

pub(super) fn independence_pairs(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let mut pairs: Vec<(Statistic, Statistic)> = cfg.pair.into_iter().chain(cfg.pairs.iter().copied()).collect();
    if pairs.is_empty() {
        pairs = default_pairs(&cfg.q_or(&[2]));
    }
    let mut stats: Vec<Statistic> = Vec::new();
    for (a, b) in &pairs {
        for s in [a, b] {
            if !stats.contains(s) {
                stats.push(*s);
            }
        }
    }
    let index = |s: &Statistic| stats.iter().position(|t| t == s).expect("collected above");
    let mut table = Table::new(cfg.clone());
    table.extra_columns = vec!["rate_log_sqrt".into(), "rate_log_sixth".into()];
    for &n in &cfg.sizes {
        let nf = n as f64;
        let rates = vec![nf.ln() / nf.sqrt(), nf.ln() / nf.powf(1.0 / 6.0)];
        let cols = ctx.uniform_columns(n, &stats, "uniform")?;
        let z: Vec<Vec<f64>> = stats
            .iter()
            .zip(&cols)
            .map(|(s, c)| {
                let sc = Scale::for_statistic(s, n, c, cfg.options.centering)?;
                Ok(c.iter().map(|&v| sc.apply(v)).collect())
            })
            .collect::<Result<_>>()?;
        for (a, b) in &pairs {
            let (ia, ib) = (index(a), index(b));
            let label = format!("{}|{}", a.label(), b.label());
            let count = cols[ia].len();
            let raw = PairedSample::from_columns(&cols[ia], &cols[ib])?;
            let gap = independence_gap(&raw)?;
            let se = independence_gap_batch_std_err(&raw, cfg.options.batches).ok();
            let mut row = Row::new(n, count, &label, "independence_gap", gap).extras(rates.clone());
            row.std_err = se;
            table.push(row);

            let normed = PairedSample::from_columns(&z[ia], &z[ib])?;
            let mixed: Vec<f64> = z[ia].iter().zip(&z[ib]).map(|(x, y)| x * y).collect();
            let m = mixed.iter().sum::<f64>() / count as f64;
            let sd = (mixed.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (count.max(2) - 1) as f64).sqrt();
            table.push(
                Row::new(n, count, &label, "mixed_moment_11", m).err(sd / (count as f64).sqrt()).extras(rates.clone()),
            );
            table.push(
                Row::new(n, count, &label, "moment_defect_11", normed.moment_defect(1, 1)?).extras(rates.clone()),
            );
        }
    }
    Ok(table)
}
