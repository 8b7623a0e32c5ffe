//! E8: fixed-n versus Poissonized laws of `ρ_∞`, linked by the
//! de-Poissonization sandwich.

use permlab_core::analysis::{depoisson_sandwich, depoissonize, poisson_window, Orientation, SandwichMode};
use permlab_core::bijections::crp_extend;
use permlab_core::hammersley::{sample_points, to_permutation, SampleMode};
use permlab_core::metrics::spearman_rho_inf;
use permlab_core::Permutation;

use super::Ctx;
use crate::table::{Row, Table};
use crate::{Error, Result};

/// Threshold with `P[ρ_∞ < m] ≈ 1/2` under the `√Exp(1)` corner law.
pub fn default_threshold(n: usize) -> f64 {
    let nf = n as f64;
    nf - (nf * std::f64::consts::LN_2).sqrt().round()
}

pub(super) fn depoisson_bridge(ctx: &Ctx) -> Result<Table> {
    let cfg = ctx.cfg;
    let thresholds: Vec<f64> = match &cfg.options.thresholds {
        Some(t) if t.len() == cfg.sizes.len() => t.clone(),
        Some(t) => {
            return Err(Error::Config(format!(
                "depoisson_bridge needs one threshold per size ({}), got {}",
                cfg.sizes.len(),
                t.len()
            )))
        }
        None => cfg.sizes.iter().map(|&n| default_threshold(n)).collect(),
    };
    let mut resolved = cfg.clone();
    resolved.options.thresholds = Some(thresholds.clone());
    let mut table = Table::new(resolved);
    let samples = cfg.samples_per_size;
    let c = cfg.options.sandwich_c;

    for (&n, &m) in cfg.sizes.iter().zip(&thresholds) {
        let nf = n as f64;
        let outer = nf + (nf * nf.ln()).sqrt();
        let len = poisson_window(outer).1 + 1;
        let detail = format!("m={m}");
        let label = format!("A_n[rho_inf<{m}]");

        // first size at which each chain reaches ρ_∞ ≥ m
        let first_hit = ctx.workers.replicas(cfg.seed, &ctx.label(&format!("crp/N={n}")), samples, |rng| {
            let mut s = Permutation::identity(1);
            for size in 1..len {
                if f64::from(spearman_rho_inf(&s).rho_inf) >= m {
                    return size;
                }
                s = crp_extend(&s, rng);
            }
            len
        });
        let mut counts = vec![0usize; len + 1];
        for h in first_hit {
            counts[h] += 1;
        }
        // A_0 = 1: the empty permutation has ρ_∞ = 0
        let mut a = Vec::with_capacity(len);
        let mut hit = 0usize;
        a.push(if m > 0.0 { 1.0 } else { 0.0 });
        for c in &counts[1..len] {
            hit += c;
            a.push(1.0 - hit as f64 / samples as f64);
        }

        let direct = ctx.workers.replicas(cfg.seed, &ctx.label(&format!("poisson/N={n}")), samples, |rng| {
            let p = sample_points(SampleMode::Poisson(nf), rng)?;
            let rho = if p.is_empty() { 0 } else { spearman_rho_inf(&to_permutation(&p)?).rho_inf };
            Ok::<_, Error>(f64::from(rho) < m)
        });
        let direct = direct.into_iter().collect::<Result<Vec<_>>>()?;
        let p_direct = direct.iter().filter(|&&b| b).count() as f64 / samples as f64;
        let se = |p: f64| (p * (1.0 - p) / samples as f64).sqrt();
        let phi = depoissonize(&a, nf)?;
        let sw = depoisson_sandwich(&a, n, SandwichMode::Monotone, c)?;

        let row = |q: &str, v: f64| Row::new(n, samples, &label, q, v).detail(detail.clone());
        let flag = |b: bool| if b { 1.0 } else { 0.0 };
        table.push(row("a_n", sw.a_n).err(se(sw.a_n)));
        table.push(row("poisson_direct", p_direct).err(se(p_direct)));
        table.push(row("phi_a", phi));
        table.push(row("sandwich_lower", sw.lower));
        table.push(row("sandwich_upper", sw.upper));
        table.push(row("slack", sw.slack));
        table.push(row("holds", flag(sw.holds)));
        table.push(row("holds_increasing", flag(sw.holds_increasing)));
        table.push(row("holds_decreasing", flag(sw.holds_decreasing)));
        let orientation = match sw.orientation {
            Orientation::Increasing => "increasing",
            Orientation::Decreasing => "decreasing",
        };
        table.push(
            row("orientation", flag(sw.orientation == Orientation::Increasing))
                .detail(format!("{detail};{orientation}")),
        );
    }
    Ok(table)
}
