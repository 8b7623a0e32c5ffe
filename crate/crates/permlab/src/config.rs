//! Experiment configuration, read from and echoed back as JSON.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use permlab_core::metrics::Statistic;
use permlab_core::Partition;
use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentId {
    #[serde(alias = "E1")]
    CltRho,
    #[serde(alias = "E2")]
    RhoInfLaw,
    #[serde(alias = "E3")]
    ConditionalClass,
    #[serde(alias = "E4")]
    IndependencePairs,
    #[serde(alias = "E5")]
    OscillationClt,
    #[serde(alias = "E6")]
    Monotonicity,
    #[serde(alias = "E7")]
    SquareLaw,
    #[serde(alias = "E8")]
    DepoissonBridge,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 8] = [
        Self::CltRho,
        Self::RhoInfLaw,
        Self::ConditionalClass,
        Self::IndependencePairs,
        Self::OscillationClt,
        Self::Monotonicity,
        Self::SquareLaw,
        Self::DepoissonBridge,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::CltRho => "clt_rho",
            Self::RhoInfLaw => "rho_inf_law",
            Self::ConditionalClass => "conditional_class",
            Self::IndependencePairs => "independence_pairs",
            Self::OscillationClt => "oscillation_clt",
            Self::Monotonicity => "monotonicity",
            Self::SquareLaw => "square_law",
            Self::DepoissonBridge => "depoisson_bridge",
        }
    }

    pub fn short(self) -> &'static str {
        ["E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8"][self as usize]
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|id| id.tag() == s || id.short().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownExperiment(s.to_owned()))
    }
}

/// Which cycle type to condition on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum Conditioning {
    Explicit {
        lambda: Partition,
    },
    SingleCycle,
    /// `⌊n^ε⌋` near-equal parts, with `ε < 1/6`.
    MaxParts {
        epsilon: f64,
    },
}

impl Conditioning {
    pub fn partition(&self, n: usize) -> Result<Partition, Error> {
        match self {
            Self::Explicit { lambda } if lambda.n() == n => Ok(lambda.clone()),
            Self::Explicit { lambda } => {
                Err(Error::Config(format!("explicit cycle type sums to {} but n = {n}", lambda.n())))
            }
            Self::SingleCycle => Ok(Partition::single_cycle(n)),
            Self::MaxParts { epsilon } => {
                let t = ((n as f64).powf(*epsilon).floor() as usize).clamp(1, n);
                Ok(Partition::balanced(n, t)?)
            }
        }
    }

    pub fn label(&self, n: usize) -> String {
        match self.partition(n) {
            Ok(p) if p.num_parts() <= 6 => format!("{:?}", p.parts()).replace(' ', ""),
            Ok(p) => format!("{}_parts", p.num_parts()),
            Err(_) => "invalid".into(),
        }
    }
}

/// Ways to draw a uniform element of a conjugacy class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    /// `Y^λ ∘ r` applied to a uniform permutation.
    ClassMap,
    /// The two-step map through a uniform `n`-cycle.
    Symmetrized,
    /// Brackets laid down first, then filled with a uniform word.
    BracketFill,
}

impl Sampler {
    pub const ALL: [Sampler; 3] = [Self::ClassMap, Self::Symmetrized, Self::BracketFill];

    pub fn tag(self) -> &'static str {
        match self {
            Self::ClassMap => "class_map",
            Self::Symmetrized => "symmetrized",
            Self::BracketFill => "bracket_fill",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// Knobs beyond the core schema. Everything has a default, and resolved
/// values are written back into the output header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Ulam centering `c` in `(I_j − c√n)/n^{1/6}`.
    pub centering: f64,
    /// Sample size for Monte Carlo normalizations.
    pub pilot_samples: usize,
    /// Batches for the batch-means standard error of independence gaps.
    pub batches: usize,
    /// Thresholds for event probabilities (E6 `m_j` per statistic, E8 `m`);
    /// filled from a pilot run when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<f64>>,
    /// Pilot quantile used to derive default thresholds.
    pub threshold_quantile: f64,
    /// Greene depth `k` for E6.
    pub greene_k: usize,
    /// `c` in the `1 + c log n / n` pseudo-monotone factor (E6).
    pub pseudo_c: f64,
    /// Constant `C` in the de-Poissonization slack (E8).
    pub sandwich_c: f64,
    /// Statistics for E1 and E3, replacing their defaults when nonempty.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub statistics: Vec<Statistic>,
    /// Conditional samplers compared in E3.
    pub samplers: Vec<Sampler>,
    /// Skips for E5.
    pub skips: Vec<usize>,
    /// Treat sizes as Poisson intensities (E2).
    pub poissonized: bool,
    /// Write the sampled values of each distribution here (E2) as
    /// `value` CSV files.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution_dir: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            centering: 2.0,
            pilot_samples: 50_000,
            batches: 10,
            thresholds: None,
            threshold_quantile: 0.5,
            greene_k: 2,
            pseudo_c: 1.0,
            sandwich_c: 1.0,
            statistics: Vec::new(),
            samplers: Sampler::ALL.to_vec(),
            skips: vec![1],
            poissonized: false,
            distribution_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment_id: ExperimentId,
    pub sizes: Vec<usize>,
    pub samples_per_size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q_values: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<(Statistic, Statistic)>,
    /// Further pairs for E4, evaluated after `pair`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<(Statistic, Statistic)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditioning: Option<Conditioning>,
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub options: Options,
}

impl ExperimentConfig {
    pub fn new(experiment_id: ExperimentId, sizes: Vec<usize>, samples_per_size: usize, seed: u64) -> Self {
        Self {
            experiment_id,
            sizes,
            samples_per_size,
            q_values: Vec::new(),
            pair: None,
            pairs: Vec::new(),
            conditioning: None,
            seed,
            output: OutputSpec::default(),
            options: Options::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::Config(m.to_owned()));
        if self.sizes.is_empty() {
            return bad("sizes must be nonempty");
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return bad("sizes must be strictly ascending");
        }
        if self.sizes[0] == 0 {
            return bad("sizes must be positive");
        }
        if self.samples_per_size == 0 {
            return bad("samples_per_size must be >= 1");
        }
        if self.q_values.contains(&0) {
            return bad("q values must be >= 1");
        }
        if let Some(Conditioning::MaxParts { epsilon }) = &self.conditioning {
            if !(*epsilon > 0.0 && *epsilon < 1.0 / 6.0) {
                return bad("max_parts conditioning needs 0 < epsilon < 1/6");
            }
        }
        if let Some(c) = &self.conditioning {
            for &n in &self.sizes {
                c.partition(n)?;
            }
        }
        let o = &self.options;
        if o.batches < 2 {
            return bad("batches must be >= 2");
        }
        if o.pilot_samples < 2 {
            return bad("pilot_samples must be >= 2");
        }
        if !(o.threshold_quantile > 0.0 && o.threshold_quantile < 1.0) {
            return bad("threshold_quantile must lie in (0, 1)");
        }
        if o.samplers.is_empty() {
            return bad("samplers must be nonempty");
        }
        if o.greene_k == 0 || o.skips.contains(&0) {
            return bad("greene_k and skips must be >= 1");
        }
        Ok(())
    }

    /// `q_values`, or the given default when the list is empty.
    pub fn q_or(&self, default: &[u32]) -> Vec<u32> {
        if self.q_values.is_empty() {
            default.to_vec()
        } else {
            self.q_values.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_and_aliases() {
        let c = ExperimentConfig::from_json(
            r#"{"experiment_id":"E4","sizes":[10,20],"samples_per_size":5,"seed":1,
            "pair":["rho_inf","rho_q:2"]}"#,
        )
        .unwrap();
        assert_eq!(c.experiment_id, ExperimentId::IndependencePairs);
        assert_eq!(c.pair.unwrap().1, Statistic::rho_q(2));
        assert_eq!("e4".parse::<ExperimentId>().unwrap(), ExperimentId::IndependencePairs);
        let round = ExperimentConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(round, c);
    }

    #[test]
    fn rejects_bad_configs() {
        let base = r#""experiment_id":"clt_rho","samples_per_size":5,"seed":1"#;
        for sizes in ["[]", "[10,10]", "[20,10]"] {
            let text = format!("{{{base},\"sizes\":{sizes}}}");
            assert!(ExperimentConfig::from_json(&text).is_err(), "{sizes}");
        }
        let eps = format!(r#"{{{base},"sizes":[100],"conditioning":{{"mode":"max_parts","epsilon":0.2}}}}"#);
        assert!(ExperimentConfig::from_json(&eps).is_err());
        let unknown = format!(r#"{{{base},"sizes":[100],"colour":1}}"#);
        assert!(ExperimentConfig::from_json(&unknown).is_err());
        assert!("E9".parse::<ExperimentId>().is_err());
    }

    #[test]
    fn conditioning_partitions() {
        let c = Conditioning::MaxParts { epsilon: 0.1 };
        assert_eq!(c.partition(2000).unwrap().parts(), &[1000, 1000]);
        assert_eq!(Conditioning::SingleCycle.partition(5).unwrap().parts(), &[5]);
        let e = Conditioning::Explicit { lambda: Partition::new(vec![2, 1]).unwrap() };
        assert!(e.partition(4).is_err());
    }
}
