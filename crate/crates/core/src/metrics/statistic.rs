use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    class_statistics, kendall_tau, lis_length, oscillation, rho_q_on_square, rsk_and_greene, second_order_oscillation,
    spearman_rho_inf, spearman_rho_q,
};
use crate::{Error, Permutation, Result};

/// Stable string tags used in experiment configs and output columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatisticId {
    RhoQ,
    RhoInf,
    KendallTau,
    Hamming,
    Cayley,
    CycleCount,
    Oscillation,
    RhoQSquare,
    Rho2Second,
    Lis,
    GreeneI,
    GreeneD,
}

impl StatisticId {
    pub const ALL: [StatisticId; 12] = [
        Self::RhoQ,
        Self::RhoInf,
        Self::KendallTau,
        Self::Hamming,
        Self::Cayley,
        Self::CycleCount,
        Self::Oscillation,
        Self::RhoQSquare,
        Self::Rho2Second,
        Self::Lis,
        Self::GreeneI,
        Self::GreeneD,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::RhoQ => "rho_q",
            Self::RhoInf => "rho_inf",
            Self::KendallTau => "kendall_tau",
            Self::Hamming => "hamming",
            Self::Cayley => "cayley",
            Self::CycleCount => "cycle_count",
            Self::Oscillation => "oscillation",
            Self::RhoQSquare => "rho_q_square",
            Self::Rho2Second => "rho2_2",
            Self::Lis => "lis",
            Self::GreeneI => "greene_I",
            Self::GreeneD => "greene_D",
        }
    }

    pub fn is_class_function(self) -> bool {
        matches!(self, Self::Hamming | Self::Cayley | Self::CycleCount)
    }
}

/// A statistic tag plus its parameters.
///
/// Text form is `tag[:p1[:p2]]`: `rho_q:2`, `oscillation:1:2` (q, skip),
/// `rho_q_square:1`, `greene_I:3` (k). Missing parameters default to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Statistic {
    pub id: StatisticId,
    pub q: u32,
    pub skip: usize,
    pub k: usize,
}

impl Statistic {
    pub fn new(id: StatisticId) -> Self {
        Self { id, q: 1, skip: 1, k: 1 }
    }

    pub fn rho_q(q: u32) -> Self {
        Self { q, ..Self::new(StatisticId::RhoQ) }
    }

    pub fn oscillation(q: u32, skip: usize) -> Self {
        Self { q, skip, ..Self::new(StatisticId::Oscillation) }
    }

    pub fn rho_q_square(q: u32) -> Self {
        Self { q, ..Self::new(StatisticId::RhoQSquare) }
    }

    pub fn greene_i(k: usize) -> Self {
        Self { k, ..Self::new(StatisticId::GreeneI) }
    }

    pub fn greene_d(k: usize) -> Self {
        Self { k, ..Self::new(StatisticId::GreeneD) }
    }

    /// Evaluates on `σ`. Greene statistics report the single row (column)
    /// length `I_k` (`D_k`).
    pub fn evaluate(&self, sigma: &Permutation) -> Result<f64> {
        Ok(match self.id {
            StatisticId::RhoQ => spearman_rho_q(sigma, self.q)? as f64,
            StatisticId::RhoInf => f64::from(spearman_rho_inf(sigma).rho_inf),
            StatisticId::KendallTau => kendall_tau(sigma) as f64,
            StatisticId::Hamming => class_statistics(sigma).hamming as f64,
            StatisticId::Cayley => class_statistics(sigma).cayley as f64,
            StatisticId::CycleCount => sigma.num_cycles() as f64,
            StatisticId::Oscillation => oscillation(sigma, self.q, self.skip)? as f64,
            StatisticId::RhoQSquare => rho_q_on_square(sigma, self.q)? as f64,
            StatisticId::Rho2Second => second_order_oscillation(sigma) as f64,
            StatisticId::Lis if self.k == 1 => lis_length(sigma) as f64,
            StatisticId::Lis => return Err(Error::OutOfRange("lis takes no parameter")),
            StatisticId::GreeneI if self.k == 1 => lis_length(sigma) as f64,
            StatisticId::GreeneI => rsk_and_greene(sigma, self.k)?.increasing[self.k - 1] as f64,
            StatisticId::GreeneD => rsk_and_greene(sigma, self.k)?.decreasing[self.k - 1] as f64,
        })
    }

    pub fn label(&self) -> String {
        let tag = self.id.tag();
        match self.id {
            StatisticId::RhoQ | StatisticId::RhoQSquare => format!("{tag}:{}", self.q),
            StatisticId::Oscillation => format!("{tag}:{}:{}", self.q, self.skip),
            StatisticId::GreeneI | StatisticId::GreeneD => format!("{tag}:{}", self.k),
            _ => String::from(tag),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split(':');
        let tag = it.next().unwrap_or_default();
        let id = StatisticId::ALL
            .into_iter()
            .find(|id| id.tag() == tag)
            .ok_or(Error::Unsupported("unknown statistic tag"))?;
        let mut params = it.map(|p| p.parse::<usize>().map_err(|_| Error::OutOfRange("bad statistic parameter")));
        let mut stat = Self::new(id);
        let mut first = || params.next().transpose();
        match id {
            StatisticId::RhoQ | StatisticId::RhoQSquare => {
                if let Some(q) = first()? {
                    stat.q = q as u32;
                }
            }
            StatisticId::Oscillation => {
                if let Some(q) = first()? {
                    stat.q = q as u32;
                }
                if let Some(skip) = first()? {
                    stat.skip = skip;
                }
            }
            StatisticId::GreeneI | StatisticId::GreeneD => {
                if let Some(k) = first()? {
                    stat.k = k;
                }
            }
            _ => {}
        }
        if first()?.is_some() {
            return Err(Error::OutOfRange("too many statistic parameters"));
        }
        if stat.q == 0 || stat.k == 0 || stat.skip == 0 {
            return Err(Error::OutOfRange("statistic parameters must be >= 1"));
        }
        Ok(stat)
    }
}

impl TryFrom<String> for Statistic {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Statistic> for String {
    fn from(s: Statistic) -> Self {
        s.label()
    }
}
