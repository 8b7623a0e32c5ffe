use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use permlab::{oracle, ExperimentConfig, ExperimentId, Format, Workers};
use permlab_core::metrics::{exact_moments, Statistic, StatisticId};

#[derive(Parser)]
#[command(name = "permlab", version, about = "Random permutation statistics: experiments and exhaustive oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config.
    Run {
        /// Experiment tag (e.g. `clt_rho`) or short id (`E1`..`E8`).
        #[arg(long)]
        experiment: ExperimentId,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; stdout when neither this nor the config names one.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run an exhaustive small-n oracle, or `all` of them.
    Oracle { name: String },
    /// Print exact normalization parameters as JSON.
    Moments {
        /// Statistic tag, optionally with parameters (`rho_q:2`).
        #[arg(long)]
        stat: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Run { experiment, config, seed, out, format, threads } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if cfg.experiment_id != experiment {
                bail!(
                    "--experiment {experiment} does not match experiment_id {} in {}",
                    cfg.experiment_id,
                    config.display()
                );
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(out) = out {
                cfg.output.path = Some(out);
            }
            if let Some(format) = format {
                cfg.output.format = format;
            }
            let workers = Workers::new(threads)?;
            let table = permlab::run(&cfg, &workers)?;
            let text = table.render(cfg.output.format)?;
            match &cfg.output.path {
                Some(path) => {
                    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    }
                    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                }
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { name } => {
            let start = Instant::now();
            let reports = oracle::run(&name)?;
            let mut ok = true;
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                println!("{verdict} {}: {} checks, {} mismatches", r.name, r.checked, r.mismatches);
                for e in &r.examples {
                    println!("    {e}");
                }
                ok &= r.passed();
            }
            println!("elapsed {:.2}s", start.elapsed().as_secs_f64());
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Moments { stat, n, q } => {
            let mut stat: Statistic = stat.parse().with_context(|| format!("statistic `{stat}`"))?;
            if let Some(q) = q {
                if !matches!(stat.id, StatisticId::RhoQ | StatisticId::RhoQSquare | StatisticId::Oscillation) {
                    bail!("--q does not apply to {}", stat.id.tag());
                }
                stat.q = q;
            }
            let params = exact_moments(n, &stat)?;
            println!("{}", serde_json::to_string_pretty(&params)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
