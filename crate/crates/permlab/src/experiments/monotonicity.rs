//! E6: monotone couplings. Chinese-restaurant growth for the Spearman
//! event `∩_q {ρ_q < m_q}`, and point-by-point Hammersley growth for the
//! joint `ρ̃_∞` / Greene event `Q_n`.

use permlab_core::bijections::crp_extend;
use permlab_core::hammersley::{add_point, sample_points, to_permutation, SampleMode};
use permlab_core::metrics::{rsk_and_greene, spearman_rho_inf, spearman_rho_q, Greene};
use permlab_core::Permutation;

use super::{quantile, Ctx};
use crate::table::{Row, Table};
use crate::{Error, Result};

struct CrpChain {
    events: Vec<bool>,
    rho_violations: u64,
    regains: u64,
}

struct PointChain {
    events: Vec<bool>,
    /// event indicator at every size from `n0` to `n_max`
    path: Vec<bool>,
    sum_violations: u64,
    row_decreases: u64,
}

fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn fmt_thresholds(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join("/")
}

/// Normalized `(ρ̃_∞, Ĩ_1..Ĩ_k, D̃_1..D̃_k)` where `Ĩ_j` and `D̃_j` are the
/// Greene unions of `j` increasing (decreasing) subsequences, centered at
/// `j·c·√n` and scaled by `n^{1/6}`.
fn greene_vector(sigma: &Permutation, k: usize, c: f64) -> Result<(Vec<f64>, Greene)> {
    let n = sigma.len() as f64;
    let g = rsk_and_greene(sigma, k.min(sigma.len()))?;
    let mut v = vec![f64::from(spearman_rho_inf(sigma).h) / n.sqrt()];
    let scaled = |x: usize, j: usize| (x as f64 - j as f64 * c * n.sqrt()) / n.powf(1.0 / 6.0);
    v.extend((1..=k).map(|j| scaled(g.increasing_union(j), j)));
    v.extend((1..=k).map(|j| scaled(g.decreasing_union(j), j)));
    Ok((v, g))
}

fn greene_event(v: &[f64], m: &[f64]) -> bool {
    v.iter().zip(m).all(|(x, t)| x > t)
}

pub(super) fn monotonicity(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let opts = &cfg.options;
    let qs = cfg.q_or(&[1, 2, 3]);
    let k = opts.greene_k;
    let (n0, n_max) = (cfg.sizes[0], *cfg.sizes.last().expect("nonempty"));
    let pilot_n = cfg.sizes[cfg.sizes.len() / 2];
    let want = qs.len() + 1 + 2 * k;

    let thresholds = match &opts.thresholds {
        Some(t) if t.len() == want => t.clone(),
        Some(t) => {
            return Err(Error::Config(format!(
                "monotonicity needs {want} thresholds (one per q, then rho_inf, I_1..I_k, D_1..D_k), got {}",
                t.len()
            )))
        }
        None => {
            let label = ctx.label(&format!("pilot/n={pilot_n}"));
            let rows = ctx.workers.replicas(cfg.seed, &label, opts.pilot_samples, |rng| {
                let s = Permutation::random(pilot_n, rng);
                let mut v = qs.iter().map(|&q| Ok(spearman_rho_q(&s, q)? as f64)).collect::<Result<Vec<f64>>>()?;
                v.extend(greene_vector(&s, k, opts.centering)?.0);
                Ok::<_, Error>(v)
            });
            let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
            let p = opts.threshold_quantile;
            (0..want)
                .map(|i| {
                    let col: Vec<f64> = rows.iter().map(|r| r[i]).collect();
                    // the Greene event uses upper tails
                    quantile(&col, if i < qs.len() { p } else { 1.0 - p })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let (m_rho, m_greene) = thresholds.split_at(qs.len());
    let mut resolved = cfg.clone();
    resolved.options.thresholds = Some(thresholds.clone());
    let mut table = Table::new(resolved);
    let chains = cfg.samples_per_size;
    let steps = (n_max - n0) as u64 * chains as u64;

    let crp = ctx.workers.replicas(cfg.seed, &ctx.label("crp"), chains, |rng| {
        let mut s = Permutation::random(n0, rng);
        let values = |s: &Permutation| -> Result<Vec<u128>> { qs.iter().map(|&q| Ok(spearman_rho_q(s, q)?)).collect() };
        let mut v = values(&s)?;
        let event = |v: &[u128]| v.iter().zip(m_rho).all(|(&x, &m)| (x as f64) < m);
        let mut out = CrpChain { events: vec![event(&v)], rho_violations: 0, regains: 0 };
        let mut prev_event = event(&v);
        for n in n0 + 1..=n_max {
            s = crp_extend(&s, rng);
            let w = values(&s)?;
            out.rho_violations += w.iter().zip(&v).filter(|(a, b)| a < b).count() as u64;
            let e = event(&w);
            out.regains += u64::from(e && !prev_event);
            if cfg.sizes.contains(&n) {
                out.events.push(e);
            }
            prev_event = e;
            v = w;
        }
        Ok::<_, Error>(out)
    });
    let crp = crp.into_iter().collect::<Result<Vec<_>>>()?;
    let crp_label = format!("crp:{}", qs.iter().map(|q| format!("rho_q:{q}")).collect::<Vec<_>>().join("&"));
    let detail = format!("thresholds={}", fmt_thresholds(m_rho));
    let mut prev_p = f64::INFINITY;
    let mut estimate_increases = 0u32;
    for (i, &n) in cfg.sizes.iter().enumerate() {
        let p = crp.iter().filter(|c| c.events[i]).count() as f64 / chains as f64;
        estimate_increases += u32::from(p > prev_p);
        prev_p = p;
        table.push(
            Row::new(n, chains, &crp_label, "event_probability", p).err(binomial_se(p, chains)).detail(detail.clone()),
        );
    }
    let total = |f: fn(&CrpChain) -> u64| crp.iter().map(f).sum::<u64>() as f64;
    table.push(Row::new(n_max, chains, &crp_label, "coupled_steps", steps as f64));
    table.push(Row::new(n_max, chains, &crp_label, "rho_q_violations", total(|c| c.rho_violations)));
    table.push(Row::new(n_max, chains, &crp_label, "event_regains", total(|c| c.regains)));
    table.push(Row::new(n_max, chains, &crp_label, "estimate_increases", f64::from(estimate_increases)));

    let points = ctx.workers.replicas(cfg.seed, &ctx.label("points"), chains, |rng| {
        let mut p = sample_points(SampleMode::FixedN(n0), rng)?;
        let vector = |p: &permlab_core::hammersley::PointSample| -> Result<(Vec<f64>, Greene)> {
            greene_vector(&to_permutation(p)?, k, opts.centering)
        };
        let (v, mut g) = vector(&p)?;
        let first = greene_event(&v, m_greene);
        let mut out = PointChain { events: vec![first], path: vec![first], sum_violations: 0, row_decreases: 0 };
        for n in n0 + 1..=n_max {
            p = add_point(&p, rng);
            let (v, h) = vector(&p)?;
            for j in 1..=g.increasing.len().min(h.increasing.len()) {
                let inc = h.increasing_union(j) < g.increasing_union(j);
                let dec = h.decreasing_union(j) < g.decreasing_union(j);
                out.sum_violations += u64::from(inc) + u64::from(dec);
                out.row_decreases += u64::from(h.increasing[j - 1] < g.increasing[j - 1])
                    + u64::from(h.decreasing[j - 1] < g.decreasing[j - 1]);
            }
            let e = greene_event(&v, m_greene);
            out.path.push(e);
            if cfg.sizes.contains(&n) {
                out.events.push(e);
            }
            g = h;
        }
        Ok::<_, Error>(out)
    });
    let points = points.into_iter().collect::<Result<Vec<_>>>()?;
    let greene_label = format!("points:rho_inf&greene_I..{k}&greene_D..{k}");
    let detail = format!("thresholds={};centering={}", fmt_thresholds(m_greene), opts.centering);
    for (i, &n) in cfg.sizes.iter().enumerate() {
        let q = points.iter().filter(|c| c.events[i]).count() as f64 / chains as f64;
        table.push(Row::new(n, chains, &greene_label, "q_n", q).err(binomial_se(q, chains)).detail(detail.clone()));
    }
    // Q_n ≤ (1 + c log n / n) Q_{n+1}, tested on every step with paired
    // standard errors
    let mut failures = 0u32;
    let mut worst_excess = f64::NEG_INFINITY;
    for (step, n) in (n0..n_max).enumerate() {
        let a: Vec<f64> = points.iter().map(|c| f64::from(u8::from(c.path[step]))).collect();
        let b: Vec<f64> = points.iter().map(|c| f64::from(u8::from(c.path[step + 1]))).collect();
        let factor = 1.0 + opts.pseudo_c * (n as f64).ln() / n as f64;
        let diffs: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - factor * y).collect();
        let mean = diffs.iter().sum::<f64>() / chains as f64;
        let sd = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (chains.max(2) - 1) as f64).sqrt();
        let se = sd / (chains as f64).sqrt();
        worst_excess = worst_excess.max(mean);
        failures += u32::from(mean > 2.0 * se);
    }
    let total = |f: fn(&PointChain) -> u64| points.iter().map(f).sum::<u64>() as f64;
    table.push(Row::new(n_max, chains, &greene_label, "coupled_steps", steps as f64));
    table.push(Row::new(n_max, chains, &greene_label, "greene_sum_violations", total(|c| c.sum_violations)));
    table.push(Row::new(n_max, chains, &greene_label, "row_length_decreases", total(|c| c.row_decreases)));
    table.push(
        Row::new(n_max, chains, &greene_label, "pseudo_monotone_failures", f64::from(failures))
            .detail(format!("c={}", opts.pseudo_c)),
    );
    if worst_excess.is_finite() {
        table.push(Row::new(n_max, chains, &greene_label, "pseudo_monotone_worst_excess", worst_excess));
    }
    Ok(table)
}
