//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, ensure, Result};
use permlab::{oracle, Conditioning, ExperimentConfig, ExperimentId, Format, Sampler, Table, Workers};
use permlab_core::analysis::{depoisson_sandwich, depoissonize, poisson_window, Orientation, SandwichMode};
use permlab_core::hammersley::{point_stats, sample_points, to_permutation, SampleMode};
use permlab_core::metrics::{exact_moments, spearman_rho_inf, Ratio, Statistic};
use permlab_core::rng::{domain, stream};

type Criterion = fn() -> Result<Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn workers(k: usize) -> Result<Workers> {
    Ok(Workers::new(Some(k))?)
}

fn run(cfg: &ExperimentConfig) -> Result<Table> {
    Ok(permlab::run(cfg, &workers(1)?)?)
}

fn value(t: &Table, n: usize, stat: &str, quantity: &str) -> Result<f64> {
    t.find(n, stat, quantity).map(|r| r.value).ok_or_else(|| anyhow!("no row n={n} {stat} {quantity}"))
}

fn oracles(names: &[&str], limit: Duration) -> Result<Outcome> {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut checks = 0;
    for name in names {
        for r in oracle::run(name)? {
            checks += r.checked;
            if !r.passed() {
                failed.push(format!("{} ({} mismatches, e.g. {:?})", r.name, r.mismatches, r.examples.first()));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failed.is_empty() && elapsed < limit;
    let mut detail = format!("{checks} checks over {} oracles in {:.1}s", names.len(), elapsed.as_secs_f64());
    if !failed.is_empty() {
        detail += &format!("; failed: {}", failed.join(", "));
    }
    Ok(Outcome::new(pass, detail))
}

fn structural() -> Result<Outcome> {
    oracles(
        &["record_map", "sqrt_rearrangement", "bracket_split", "class_map", "second_order", "cyclify", "greene"],
        Duration::from_secs(60),
    )
}

fn moments() -> Result<Outcome> {
    let base = oracles(&["moments"], Duration::MAX)?;
    let e = exact_moments(3, &Statistic::rho_q(1))?.exact.ok_or_else(|| anyhow!("n=3 not exact"))?;
    let footrule = Ratio::new(8, 3) == Some(e.mean) && Ratio::new(20, 9) == Some(e.variance);
    Ok(Outcome::new(
        base.pass && footrule,
        format!("{}; n=3 rho_1 mean {:?} variance {:?}", base.detail, e.mean, e.variance),
    ))
}

fn rho_inf_law() -> Result<Outcome> {
    let start = Instant::now();
    let cfg = ExperimentConfig::new(ExperimentId::RhoInfLaw, vec![10_000], 100_000, 7);
    let t = run(&cfg)?;
    let n = 10_000;
    let two = value(&t, n, "rho_inf", "ks_sqrt_exp_0.5")?;
    let one = value(&t, n, "rho_inf_one_sided", "ks_sqrt_exp_1")?;
    let two_alt = value(&t, n, "rho_inf", "ks_sqrt_exp_1")?;
    let one_alt = value(&t, n, "rho_inf_one_sided", "ks_sqrt_exp_2")?;
    let elapsed = start.elapsed();
    Ok(Outcome::new(
        two <= 0.05 && one <= 0.05 && elapsed < Duration::from_secs(300),
        format!(
            "KS vs 1-exp(-2b^2) = {two:.4}, one-sided vs 1-exp(-b^2) = {one:.4} (threshold 0.05); \
             diagnostic: vs 1-exp(-b^2) = {two_alt:.4}, one-sided vs 1-exp(-b^2/2) = {one_alt:.4}; {:.1}s",
            elapsed.as_secs_f64()
        ),
    ))
}

fn hammersley() -> Result<Outcome> {
    let d = domain("acceptance/hammersley");
    let mut bad = 0;
    for r in 0..10_000u64 {
        let mut rng = stream(4, d, r);
        let p = sample_points(SampleMode::FixedN(1000), &mut rng)?;
        let rho = spearman_rho_inf(&to_permutation(&p)?).rho_inf;
        let s = point_stats(&p)?;
        if s.max_f() != Some(rho) || s.min_h() != Some(1000 - rho) {
            bad += 1;
        }
    }
    Ok(Outcome::new(bad == 0, format!("{bad} of 10000 configurations at n=1000 disagree")))
}

fn clt_suite() -> Result<Outcome> {
    let n = 1000;
    let mut e1 = ExperimentConfig::new(ExperimentId::CltRho, vec![n], 100_000, 5);
    e1.q_values = vec![1, 2];
    let mut e5 = ExperimentConfig::new(ExperimentId::OscillationClt, vec![n], 100_000, 5);
    e5.q_values = vec![1];
    let mut e7 = ExperimentConfig::new(ExperimentId::SquareLaw, vec![n], 100_000, 5);
    e7.q_values = vec![1];
    let (t1, t5, t7) = (run(&e1)?, run(&e5)?, run(&e7)?);
    let ks = [
        ("rho_q:1", value(&t1, n, "rho_q:1", "ks_std_normal")?),
        ("rho_q:2", value(&t1, n, "rho_q:2", "ks_std_normal")?),
        ("kendall_tau", value(&t1, n, "kendall_tau", "ks_std_normal")?),
        ("oscillation:1:1", value(&t5, n, "oscillation:1:1", "ks_std_normal")?),
        ("rho_q_square:1", value(&t7, n, "rho_q_square:1", "ks_std_normal")?),
    ];
    let pass = ks.iter().all(|(_, v)| *v <= 0.05);
    let list: Vec<String> = ks.iter().map(|(s, v)| format!("{s} {v:.4}")).collect();
    Ok(Outcome::new(pass, format!("KS at n=1000: {}", list.join(", "))))
}

fn conditional() -> Result<Outcome> {
    let n = 2000;
    let mut parts = Vec::new();
    let mut pass = true;
    for cond in [Conditioning::SingleCycle, Conditioning::MaxParts { epsilon: 0.1 }] {
        let mut cfg = ExperimentConfig::new(ExperimentId::ConditionalClass, vec![n], 100_000, 6);
        cfg.q_values = vec![2];
        cfg.options.statistics = vec![Statistic::rho_q(2)];
        cfg.options.samplers = vec![Sampler::ClassMap];
        cfg.conditioning = Some(cond.clone());
        let lambda = cond.partition(n)?;
        ensure!(lambda.num_parts() as f64 <= (n as f64).powf(0.1), "too many parts in {lambda:?}");
        let d = value(&run(&cfg)?, n, "rho_q:2", "ks_vs_unconditional")?;
        pass &= d <= 0.05;
        parts.push(format!("{} parts: KS {d:.4}", lambda.num_parts()));
    }
    Ok(Outcome::new(pass, format!("n=2000, {}", parts.join("; "))))
}

fn independence() -> Result<Outcome> {
    let sizes = vec![100, 1000, 10_000];
    let mut cfg = ExperimentConfig::new(ExperimentId::IndependencePairs, sizes.clone(), 100_000, 8);
    let s = |t: &str| t.parse::<Statistic>();
    cfg.pairs = vec![
        (s("rho_inf")?, s("rho_q:2")?),
        (s("cycle_count")?, s("rho_q:2")?),
        (s("cycle_count")?, s("kendall_tau")?),
        (s("rho_inf")?, s("greene_I:1")?),
    ];
    let t = run(&cfg)?;
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, b) in &cfg.pairs {
        let label = format!("{}|{}", a.label(), b.label());
        let rows: Vec<_> = sizes
            .iter()
            .map(|&n| t.find(n, &label, "independence_gap").ok_or_else(|| anyhow!("missing {label} at {n}")))
            .collect::<Result<_>>()?;
        let se = |r: &permlab::Row| r.std_err.unwrap_or(0.0);
        let monotone = rows.windows(2).all(|w| w[1].value <= w[0].value + 2.0 * (se(w[0]).hypot(se(w[1]))));
        let last = rows[rows.len() - 1].value;
        pass &= monotone && last <= 0.05;
        let gaps: Vec<String> = rows.iter().map(|r| format!("{:.4}", r.value)).collect();
        parts.push(format!("{label} {}{}", gaps.join(" > "), if monotone { "" } else { " (not decreasing)" }));
    }
    Ok(Outcome::new(pass, parts.join("; ")))
}

fn monotonicity() -> Result<Outcome> {
    let sizes: Vec<usize> = (5..=50).collect();
    let chains = 1_000_000usize.div_ceil(45);
    let mut cfg = ExperimentConfig::new(ExperimentId::Monotonicity, sizes, chains, 9);
    cfg.options.greene_k = 3;
    let t = run(&cfg)?;
    let crp = t.select("crp:rho_q:1&rho_q:2&rho_q:3", "coupled_steps").next().ok_or_else(|| anyhow!("no crp rows"))?;
    let label = crp.statistic.clone();
    let crp_steps = crp.value;
    let greene = t.select("points:rho_inf&greene_I..3&greene_D..3", "coupled_steps").next();
    let greene = greene.ok_or_else(|| anyhow!("no point rows"))?;
    let (glabel, point_steps) = (greene.statistic.clone(), greene.value);
    let n = 50;
    let rho_viol = value(&t, n, &label, "rho_q_violations")?;
    let regains = value(&t, n, &label, "event_regains")?;
    let greene_viol = value(&t, n, &glabel, "greene_sum_violations")?;
    let rows = value(&t, n, &glabel, "row_length_decreases")?;
    let pass = crp_steps >= 1e6 && point_steps >= 1e6 && rho_viol == 0.0 && regains == 0.0 && greene_viol == 0.0;
    Ok(Outcome::new(
        pass,
        format!(
            "{crp_steps} restaurant steps: {rho_viol} rho_q decreases, {regains} event regains; \
             {point_steps} point steps: {greene_viol} Greene partial-sum decreases (j<=3); \
             diagnostic: {rows} individual row/column length decreases"
        ),
    ))
}

/// `e^{−m} Σ_{n<terms} A_n mⁿ/n!`, with the Poisson weights built by the
/// recurrence `p_n = p_{n−1} m/n` from `p_0 = e^{−m}`.
fn long_sum(a: impl Fn(usize) -> f64, m: f64, terms: usize) -> f64 {
    let mut p = (-m).exp();
    let mut total = p * a(0);
    for n in 1..terms {
        p *= m / n as f64;
        total += p * a(n);
    }
    total
}

fn depoisson() -> Result<Outcome> {
    type Seq = Box<dyn Fn(usize, usize) -> f64>;
    let sequences: Vec<(&str, Seq)> = vec![
        ("n/(n+1)", Box::new(|n, _| n as f64 / (n as f64 + 1.0))),
        ("1-1/sqrt(n+1)", Box::new(|n, _| 1.0 - 1.0 / (n as f64 + 1.0).sqrt())),
        ("logistic", Box::new(|n, big| 1.0 / (1.0 + (-(n as f64 - big as f64) / (big as f64).sqrt()).exp()))),
    ];
    let mut failures = Vec::new();
    for big in [100usize, 400, 1600] {
        let nf = big as f64;
        let len = poisson_window(nf + (nf * nf.ln()).sqrt()).1 + 1;
        for (name, f) in &sequences {
            let a: Vec<f64> = (0..len).map(|n| f(n, big)).collect();
            let s = depoisson_sandwich(&a, big, SandwichMode::Monotone, 1.0)?;
            if !(s.holds_increasing && s.orientation == Orientation::Increasing) {
                failures.push(format!("{name} at N={big}"));
            }
        }
    }
    let m = 50.0;
    let (lo_len, terms) = (poisson_window(m).1 + 1, 1_000_000);
    let a = |n: usize| n as f64 / (n as f64 + 1.0);
    let truncated = depoissonize(&(0..lo_len).map(a).collect::<Vec<_>>(), m)?;
    let full = long_sum(a, m, terms);
    let diff = (truncated - full).abs();
    Ok(Outcome::new(
        failures.is_empty() && diff <= 1e-8,
        format!(
            "sandwich failures: {}; |truncated - 10^6-term sum| at m=50 = {diff:.2e}",
            if failures.is_empty() { "none".to_owned() } else { failures.join(", ") }
        ),
    ))
}

fn determinism() -> Result<Outcome> {
    let mut configs = Vec::new();
    for id in ExperimentId::ALL {
        let (sizes, samples) = match id {
            ExperimentId::Monotonicity => (vec![5, 10, 20], 3000),
            ExperimentId::DepoissonBridge => (vec![100], 2000),
            _ => (vec![30, 200], 3000),
        };
        let mut cfg = ExperimentConfig::new(id, sizes, samples, 10);
        cfg.options.pilot_samples = 2000;
        configs.push(cfg);
    }
    configs.push(ExperimentConfig::new(ExperimentId::RhoInfLaw, vec![10_000], 100_000, 7));
    let (one, eight) = (workers(1)?, workers(8)?);
    let mut differing = Vec::new();
    for cfg in &configs {
        for format in [Format::Csv, Format::Json] {
            let a = permlab::run(cfg, &one)?.render(format)?;
            let b = permlab::run(cfg, &eight)?.render(format)?;
            let again = permlab::run(cfg, &one)?.render(format)?;
            if a != b || a != again {
                differing.push(format!("{} {format:?}", cfg.experiment_id));
            }
            if cfg.experiment_id == ExperimentId::RhoInfLaw && cfg.sizes == [10_000] {
                break;
            }
        }
    }
    Ok(Outcome::new(
        differing.is_empty(),
        format!(
            "{} configs, 1 vs 8 workers: {}",
            configs.len(),
            if differing.is_empty() {
                "byte-identical".to_owned()
            } else {
                format!("differ for {}", differing.join(", "))
            }
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("exhaustive structural oracles", structural),
        ("moment oracle", moments),
        ("rho_inf limit law", rho_inf_law),
        ("Hammersley identities", hammersley),
        ("CLT suite", clt_suite),
        ("conditional-law equality", conditional),
        ("independence gaps", independence),
        ("monotone couplings", monotonicity),
        ("de-Poissonization", depoisson),
        ("determinism across worker counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome::new(false, format!("error: {e:#}")));
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.pass);
        println!("{verdict} {:>2} {name} [{:.1}s]: {}", i + 1, start.elapsed().as_secs_f64(), outcome.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
